#ifndef DTS_DTS_HPP
#define DTS_DTS_HPP

#include "dts/catalog.hpp"
#include "dts/constructions.hpp"
#include "dts/design.hpp"
#include "dts/digraph.hpp"
#include "dts/enumeration.hpp"
#include "dts/errors.hpp"
#include "dts/hillclimb.hpp"
#include "dts/manifest.hpp"
#include "dts/proof_json.hpp"
#include "dts/prover.hpp"
#include "dts/search.hpp"
#include "dts/suite.hpp"
#include "dts/text_format.hpp"

#endif // DTS_DTS_HPP
