#pragma once

#include <string>

#include <json.hpp>

#include "cobweb/fseq.hpp"
#include "cobweb/poset.hpp"
#include "cobweb/seqalg.hpp"
#include "cobweb/tiling.hpp"

namespace cobweb {

using Json = nlohmann::json;

// {"kind": ..., parameters by kind}. Big values are decimal strings; on input
// plain JSON integers are accepted too. Throws ParseError.
Json descriptor_to_json(const FSeq& seq);
FSeq descriptor_from_json(const Json& j);
FSeq parse_descriptor(const std::string& text);

// {"layer": {"k", "n", "seq"}, "blocks": [[[slots...] per level] per block]}
Json tiling_to_json(const Tiling& tiling);
Tiling tiling_from_json(const Json& j);

// {"base": <descriptor>, "h": ["1", "2", ...]}
Json hsequence_to_json(const HSequence& h);

// {"count": "...", "complete": bool, "tilings": [...]}
Json enumeration_to_json(const EnumerationResult& r, bool complete);

}  // namespace cobweb
