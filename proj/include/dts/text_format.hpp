#ifndef DTS_TEXT_FORMAT_HPP
#define DTS_TEXT_FORMAT_HPP

// Plain-text formats shared by every command:
//
//   DTS v=<n>            one design per file
//   LABELS l0 ... l(n-1) optional display labels
//   a b c                one triple per line, 0-based
//   SEQ p1 ... pn        optional trailing sequencing
//
// TTS and PBD files use headers `TTS v=<n>` / `PBD v=<n>` followed by one
// block per line. `#` starts a comment anywhere on a line.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dts/design.hpp"

namespace dts {

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& msg)
        : InputError("line " + std::to_string(line) + ": " + msg), line(line) {}

    std::size_t line;
};

/// A design file as written, before any cover check.
struct ParsedDesign {
    std::size_t v = 0;
    TripleList triples;
    std::vector<std::string> labels;
    std::optional<std::vector<Point>> sequencing;
};

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view raw = text.substr(start, end - start);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; in >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

inline std::size_t parse_uint(const std::string& tok, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected a non-negative integer, found '" + tok + "'");
    }
    return value;
}

inline std::size_t parse_header(const Line& line, std::string_view keyword) {
    if (line.tokens.size() != 2 || line.tokens[0] != keyword || line.tokens[1].rfind("v=", 0) != 0) {
        throw ParseError(line.number, "expected header '" + std::string(keyword) + " v=<n>'");
    }
    return parse_uint(line.tokens[1].substr(2), line.number);
}

inline Point parse_point(const std::string& tok, std::size_t v, std::size_t line) {
    std::size_t p = parse_uint(tok, line);
    if (p >= v) {
        throw ParseError(line, "point " + tok + " out of range for v = " + std::to_string(v));
    }
    return static_cast<Point>(p);
}

} // namespace detail

inline ParsedDesign parse_design(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty input, expected 'DTS v=<n>'");
    ParsedDesign out;
    out.v = detail::parse_header(lines[0], "DTS");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [number, tokens] = lines[i];
        if (out.sequencing) throw ParseError(number, "content after SEQ line");
        if (tokens[0] == "LABELS") {
            if (tokens.size() != out.v + 1) {
                throw ParseError(number, "LABELS needs exactly " + std::to_string(out.v) + " entries");
            }
            out.labels.assign(tokens.begin() + 1, tokens.end());
        } else if (tokens[0] == "SEQ") {
            std::vector<Point> seq;
            for (std::size_t k = 1; k < tokens.size(); ++k)
                seq.push_back(detail::parse_point(tokens[k], out.v, number));
            if (seq.size() != out.v || !is_permutation_of_range(seq)) {
                throw ParseError(number, "SEQ is not a permutation of 0.." + std::to_string(out.v - 1));
            }
            out.sequencing = std::move(seq);
        } else {
            if (tokens.size() != 3) {
                throw ParseError(number, "expected a triple 'a b c', found " + std::to_string(tokens.size()) +
                                             " fields");
            }
            Triple t{detail::parse_point(tokens[0], out.v, number), detail::parse_point(tokens[1], out.v, number),
                     detail::parse_point(tokens[2], out.v, number)};
            if (t.degenerate()) throw ParseError(number, "triple repeats a point");
            out.triples.push_back(t);
        }
    }
    return out;
}

/// Parses and checks the exact cover; throws InvalidDesign with the full
/// defect report when the triples do not form a DTS.
inline DirectedTripleSystem load_design(std::string_view text) {
    ParsedDesign parsed = parse_design(text);
    return DirectedTripleSystem(parsed.v, std::move(parsed.triples), std::move(parsed.labels));
}

/// Triples are written in sorted order so equal designs serialize to equal bytes.
inline std::string serialize_triples(std::size_t v, std::span<const Triple> triples,
                                     const std::vector<std::string>& labels = {},
                                     const Sequencing* seq = nullptr) {
    TripleList sorted(triples.begin(), triples.end());
    std::sort(sorted.begin(), sorted.end());
    std::ostringstream out;
    out << "DTS v=" << v << '\n';
    if (!labels.empty()) {
        out << "LABELS";
        for (const auto& l : labels) out << ' ' << l;
        out << '\n';
    }
    for (const Triple& t : sorted) out << t.first << ' ' << t.middle << ' ' << t.last << '\n';
    if (seq) {
        out << "SEQ";
        for (Point p : seq->order()) out << ' ' << p;
        out << '\n';
    }
    return out.str();
}

inline std::string serialize_design(const DirectedTripleSystem& dts, const Sequencing* seq = nullptr) {
    return serialize_triples(dts.order(), dts.triples(), dts.labels(), seq);
}

inline TwofoldTripleSystem parse_tts(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty input, expected 'TTS v=<n>'");
    TwofoldTripleSystem tts;
    tts.v = detail::parse_header(lines[0], "TTS");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [number, tokens] = lines[i];
        if (tokens.size() != 3) throw ParseError(number, "expected a block 'a b c'");
        tts.blocks.push_back(make_block(detail::parse_point(tokens[0], tts.v, number),
                                        detail::parse_point(tokens[1], tts.v, number),
                                        detail::parse_point(tokens[2], tts.v, number)));
    }
    if (auto defect = tts_defect(tts); !defect.empty()) throw InputError("invalid TTS: " + defect);
    return tts;
}

inline std::string serialize_tts(const TwofoldTripleSystem& tts) {
    std::ostringstream out;
    out << "TTS v=" << tts.v << '\n';
    for (const Block3& b : tts.blocks) out << b[0] << ' ' << b[1] << ' ' << b[2] << '\n';
    return out.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace dts

#endif // DTS_TEXT_FORMAT_HPP
