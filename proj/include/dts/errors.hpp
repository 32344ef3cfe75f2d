#ifndef DTS_ERRORS_HPP
#define DTS_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dts {

// Malformed input: bad point indices, degenerate triples, parse failures.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (window length, permutation, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The order v is not congruent to 0 or 1 mod 3, or is outside the range an
// operation supports.
class AdmissibilityError : public DomainError {
public:
    using DomainError::DomainError;
};

class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A search ran out of nodes or time before it could finish. `partial` holds
// whatever count had been accumulated when the budget ran out.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(const std::string& what, std::uint64_t partial, std::uint64_t nodes)
        : std::runtime_error(what), partial(partial), nodes(nodes) {}

    std::uint64_t partial;
    std::uint64_t nodes;
};

} // namespace dts

#endif // DTS_ERRORS_HPP
