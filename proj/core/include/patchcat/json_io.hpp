#pragma once

#include <string>

#include "patchcat/birkhoff.hpp"
#include "patchcat/equalizer.hpp"
#include "patchcat/fincat.hpp"

namespace patchcat {

// Serializers emit deterministic JSON text: sorted keys, two-space indent,
// coefficients as exact decimal strings. Parsers validate shape and ring
// invariants and throw ParseError naming the offending node; every value
// round-trips bit-exactly because the in-memory forms are canonical.

std::string ring_to_json(const RingDesc& r);
RingDesc ring_from_json(const std::string& text);

/// {"ring": ..., "rows": r, "cols": c, "entries": row-major
///  [{"num": [c0, c1, ...], "den": [...]}, ...]} with ascending
/// coefficient lists.
std::string mat_to_json(const Mat& m);
Mat mat_from_json(const std::string& text);

/// {"ring": ..., "relations": mat} presenting coker(relations).
std::string module_to_json(const PresentedModule& m);
PresentedModule module_from_json(const std::string& text);

/// {"source": module, "target": module, "matrix": mat}; well-definedness
/// is re-checked on parse.
std::string module_map_to_json(const ModuleMap& f);
ModuleMap module_map_from_json(const std::string& text);

/// Object/morphism tables: {"objects": n, "src": [...], "dst": [...],
/// "identity": [...], "compose": n_mor x n_mor nested rows, -1 for
/// non-composable}. Category axioms are re-checked on parse.
std::string fincat_to_json(const FinCat& c);
FinCat fincat_from_json(const std::string& text);

/// Two-lane datum over the affine-line patching context:
/// {"context": "bl", "field": "f5"|"q", "carriers": [module, module],
///  "glue": mat over k(t)}. Only the bl context shape is supported.
std::string bl_object_to_json(const EqObject& x);
EqObject bl_object_from_json(const std::string& text);

/// {"source": bl object, "target": bl object, "parts": [mat, mat]}.
std::string bl_morphism_to_json(const EqMorphism& f);
EqMorphism bl_morphism_from_json(const std::string& text);

/// {"field": "f5"|"q", "n": ..., "entries": n x n rows of Laurent
/// coefficient maps {exponent: coefficient}, zero entries as {}}.
std::string cocycle_to_json(const Cocycle& c);
Cocycle cocycle_from_json(const std::string& text);

}  // namespace patchcat
