#ifndef QDISK_JSON_IO_HPP
#define QDISK_JSON_IO_HPP

#include <json.hpp>

#include "qdisk/compact_op.hpp"
#include "qdisk/khomology.hpp"
#include "qdisk/mobius.hpp"
#include "qdisk/norms.hpp"

namespace qdisk {

using Json = nlohmann::ordered_json;

// Symbol: {"coeffs": [{"n": int, "re": float, "im": float}, ...]}
Json to_json(const Symbol& f);
Symbol symbol_from_json(const Json& j);

// CompactOp: {"dim": int, "entries": [{"k": int, "l": int, "re": float, "im": float}, ...]}
Json to_json(const CompactOp& a);
CompactOp compact_from_json(const Json& j);

// ToeplitzElem: {"symbol": Symbol, "compact": CompactOp}
Json to_json(const ToeplitzElem& a);
ToeplitzElem toeplitz_from_json(const Json& j);

Json to_json(const NormReport& r);
Json to_json(const IndexResult& r);
Json to_json(const MobiusReport& r);

}  // namespace qdisk

#endif
