#include "patchcat/json_io.hpp"

#include <json.hpp>

#include "patchcat/errors.hpp"
#include "patchcat/patching.hpp"

namespace patchcat {

namespace {

using nlohmann::json;

// Converts construction-time validation failures (ring/shape/unit errors)
// into ParseError with a location; logic errors still propagate as bugs.
template <typename Fn>
auto wrap_parse(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid json: ") + e.what());
  }
}

const json& expect(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(where + ": missing key \"" + key + "\"");
  return j.at(key);
}

int expect_int(const json& j, const char* key, const std::string& where) {
  const json& v = expect(j, key, where);
  if (!v.is_number_integer())
    throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string expect_string(const json& j, const char* key, const std::string& where) {
  const json& v = expect(j, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<int> expect_int_array(const json& j, const char* key,
                                  const std::string& where) {
  const json& v = expect(j, key, where);
  if (!v.is_array()) throw ParseError(where + "." + key + ": expected an array");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer())
      throw ParseError(where + "." + key + ": expected integer entries");
    out.push_back(e.get<int>());
  }
  return out;
}

BaseField field_from_tag(const std::string& tag, const std::string& where) {
  if (tag == "q") return rationals_field();
  if (tag.size() >= 2 && tag[0] == 'f') {
    try {
      unsigned long p = std::stoul(tag.substr(1));
      return prime_field(static_cast<std::uint32_t>(p));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(where + ": bad field tag \"" + tag + "\"");
    }
  }
  throw ParseError(where + ": bad field tag \"" + tag + "\" (want \"q\" or \"f<p>\")");
}

std::string field_tag(BaseField f) {
  return f.is_rationals() ? "q" : "f" + std::to_string(f.p);
}

json ring_to_value(const RingDesc& r) {
  json j;
  j["kind"] = to_string(r.kind);
  j["p"] = r.p;
  return j;
}

RingDesc ring_from_value(const json& j, const std::string& where) {
  std::string kind = expect_string(j, "kind", where);
  int p = expect_int(j, "p", where);
  if (p < 0) throw ParseError(where + ".p: negative characteristic");
  BaseField f = p == 0 ? rationals_field() : prime_field(static_cast<std::uint32_t>(p));
  if (kind == "prime_field" || kind == "rationals") {
    if ((kind == "rationals") != (p == 0))
      throw ParseError(where + ": kind/characteristic mismatch");
    return ring_scalars(f);
  }
  if (kind == "poly") return ring_poly(f);
  if (kind == "laurent") return ring_laurent(f);
  if (kind == "local_at_zero") return ring_local_at_zero(f);
  if (kind == "rational_functions") return ring_rational_functions(f);
  throw ParseError(where + ".kind: unknown ring kind \"" + kind + "\"");
}

json poly_to_value(const Poly& p) {
  json arr = json::array();
  for (int i = 0; i <= p.degree(); ++i) arr.push_back(p.coeff(i).to_string());
  if (p.is_zero()) arr = json::array({"0"});
  return arr;
}

Poly poly_from_value(const json& j, BaseField f, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ParseError(where + ": expected a nonempty coefficient array");
  std::vector<Scalar> coeffs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& c = j.at(i);
    std::string at = where + "[" + std::to_string(i) + "]";
    if (!c.is_string()) throw ParseError(at + ": coefficients must be strings");
    coeffs.push_back(wrap_parse(at, [&] { return Scalar::parse(f, c.get<std::string>()); }));
  }
  return wrap_parse(where, [&] { return Poly(f, std::move(coeffs)); });
}

json elem_to_value(const RingElem& e) {
  json j;
  j["num"] = poly_to_value(e.num());
  j["den"] = poly_to_value(e.den());
  return j;
}

RingElem elem_from_value(const json& j, const RingDesc& r, const std::string& where) {
  Poly num = poly_from_value(expect(j, "num", where), r.base_field(), where + ".num");
  Poly den = poly_from_value(expect(j, "den", where), r.base_field(), where + ".den");
  return wrap_parse(where, [&] {
    return RingElem::from_fraction(r, std::move(num), std::move(den));
  });
}

json mat_to_value(const Mat& m) {
  json j;
  j["ring"] = ring_to_value(m.ring());
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) entries.push_back(elem_to_value(m.at(i, k)));
  j["entries"] = entries;
  return j;
}

Mat mat_from_value(const json& j, const std::string& where) {
  RingDesc r = ring_from_value(expect(j, "ring", where), where + ".ring");
  int rows = expect_int(j, "rows", where);
  int cols = expect_int(j, "cols", where);
  if (rows < 0 || cols < 0) throw ParseError(where + ": negative matrix shape");
  const json& entries = expect(j, "entries", where);
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows * cols)
    throw ParseError(where + ".entries: expected " + std::to_string(rows * cols) +
                     " entries");
  Mat m(r, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k)
      m.at(i, k) = elem_from_value(entries.at(static_cast<std::size_t>(i * cols + k)), r,
                                   where + ".entries[" + std::to_string(i * cols + k) +
                                       "]");
  return m;
}

json module_to_value(const PresentedModule& m) {
  json j;
  j["ring"] = ring_to_value(m.ring);
  j["relations"] = mat_to_value(m.rel);
  return j;
}

PresentedModule module_from_value(const json& j, const std::string& where) {
  RingDesc r = ring_from_value(expect(j, "ring", where), where + ".ring");
  Mat rel = mat_from_value(expect(j, "relations", where), where + ".relations");
  if (rel.ring() != r)
    throw ParseError(where + ": relation matrix ring differs from the module ring");
  return PresentedModule(r, std::move(rel));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// The affine-line gluing diagram the two-lane schemas are pinned to.
void require_bl(const EqContext& eq, const std::string& where) {
  if (eq.lane_count() != 2 || eq.lanes[0].kind != RingKind::local_at_zero ||
      eq.lanes[1].kind != RingKind::laurent ||
      eq.r1.kind != RingKind::rational_functions)
    throw UnsupportedRing(where + ": only the affine-line two-lane context is supported");
}

json bl_object_to_value(const EqObject& x) {
  require_bl(x.ctx(), "bl object");
  json j;
  j["context"] = "bl";
  j["field"] = field_tag(x.ctx().r1.base_field());
  j["carriers"] = json::array({module_to_value(x.carrier()[0]),
                               module_to_value(x.carrier()[1])});
  j["glue"] = mat_to_value(x.glue().matrix());
  return j;
}

EqObject bl_object_from_value(const json& j, const std::string& where) {
  if (expect_string(j, "context", where) != "bl")
    throw ParseError(where + ".context: only \"bl\" is supported");
  BaseField f = field_from_tag(expect_string(j, "field", where), where + ".field");
  const json& carriers = expect(j, "carriers", where);
  if (!carriers.is_array() || carriers.size() != 2)
    throw ParseError(where + ".carriers: expected exactly two lane modules");
  PresentedModule c0 = module_from_value(carriers.at(0), where + ".carriers[0]");
  PresentedModule c1 = module_from_value(carriers.at(1), where + ".carriers[1]");
  PatchingContext pc = bl_context(f);
  if (c0.ring != pc.eq.lanes[0] || c1.ring != pc.eq.lanes[1])
    throw ParseError(where + ".carriers: lane rings must be local_at_zero and laurent");
  Mat glue_mat = mat_from_value(expect(j, "glue", where), where + ".glue");
  if (glue_mat.ring() != pc.eq.r1)
    throw ParseError(where + ".glue: glue must live over rational_functions");
  return wrap_parse(where, [&] {
    ModuleMap glue_map(base_change(pc.eq.h1, c1), base_change(pc.eq.h0, c0),
                       std::move(glue_mat));
    return EqObject(pc.eq, {std::move(c0), std::move(c1)}, std::move(glue_map));
  });
}

json cocycle_to_value(const Cocycle& c) {
  const Mat& m = c.matrix();
  json j;
  j["field"] = field_tag(m.ring().base_field());
  j["n"] = m.rows();
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) {
      const RingElem& e = m.at(i, k);
      json entry = json::object();
      int shift = e.den().t_valuation();
      for (int d = 0; d <= e.num().degree(); ++d) {
        Scalar coeff = e.num().coeff(d);
        if (coeff.is_zero()) continue;
        entry[std::to_string(d - shift)] = coeff.to_string();
      }
      row.push_back(entry);
    }
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j;
}

Cocycle cocycle_from_value(const json& j, const std::string& where) {
  BaseField f = field_from_tag(expect_string(j, "field", where), where + ".field");
  int n = expect_int(j, "n", where);
  if (n < 1) throw ParseError(where + ".n: need n >= 1");
  RingDesc lau = ring_laurent(f);
  const json& rows = expect(j, "entries", where);
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError(where + ".entries: expected " + std::to_string(n) + " rows");
  Mat m(lau, n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(where + ".entries[" + std::to_string(i) + "]: expected " +
                       std::to_string(n) + " columns");
    for (int k = 0; k < n; ++k) {
      const json& entry = row.at(static_cast<std::size_t>(k));
      std::string at = where + ".entries[" + std::to_string(i) + "][" +
                       std::to_string(k) + "]";
      if (!entry.is_object())
        throw ParseError(at + ": expected an exponent-to-coefficient map");
      RingElem acc = RingElem::zero(lau);
      for (const auto& [key, value] : entry.items()) {
        int exp = 0;
        try {
          exp = std::stoi(key);
        } catch (const std::exception&) {
          throw ParseError(at + ": bad exponent key \"" + key + "\"");
        }
        if (!value.is_string()) throw ParseError(at + ": coefficients must be strings");
        Scalar coeff =
            wrap_parse(at, [&] { return Scalar::parse(f, value.get<std::string>()); });
        acc = acc + RingElem::constant(lau, coeff) * RingElem::t_power(lau, exp);
      }
      m.at(i, k) = acc;
    }
  }
  return wrap_parse(where, [&] { return Cocycle(std::move(m)); });
}

}  // namespace

std::string ring_to_json(const RingDesc& r) { return dump(ring_to_value(r)); }

RingDesc ring_from_json(const std::string& text) {
  return ring_from_value(parse_text(text), "ring");
}

std::string mat_to_json(const Mat& m) { return dump(mat_to_value(m)); }

Mat mat_from_json(const std::string& text) {
  return mat_from_value(parse_text(text), "mat");
}

std::string module_to_json(const PresentedModule& m) { return dump(module_to_value(m)); }

PresentedModule module_from_json(const std::string& text) {
  return module_from_value(parse_text(text), "module");
}

std::string module_map_to_json(const ModuleMap& f) {
  json j;
  j["source"] = module_to_value(f.source());
  j["target"] = module_to_value(f.target());
  j["matrix"] = mat_to_value(f.matrix());
  return dump(j);
}

ModuleMap module_map_from_json(const std::string& text) {
  json j = parse_text(text);
  PresentedModule src = module_from_value(expect(j, "source", "map"), "map.source");
  PresentedModule tgt = module_from_value(expect(j, "target", "map"), "map.target");
  Mat a = mat_from_value(expect(j, "matrix", "map"), "map.matrix");
  return wrap_parse("map", [&] {
    return ModuleMap(std::move(src), std::move(tgt), std::move(a));
  });
}

std::string fincat_to_json(const FinCat& c) {
  json j;
  j["objects"] = c.objects();
  json src = json::array(), dst = json::array(), id = json::array();
  for (int f = 0; f < c.morphisms(); ++f) {
    src.push_back(c.src(f));
    dst.push_back(c.dst(f));
  }
  for (int a = 0; a < c.objects(); ++a) id.push_back(c.identity(a));
  json comp = json::array();
  for (int g = 0; g < c.morphisms(); ++g) {
    json row = json::array();
    for (int f = 0; f < c.morphisms(); ++f)
      row.push_back(c.composable(g, f) ? c.compose(g, f) : -1);
    comp.push_back(row);
  }
  j["src"] = src;
  j["dst"] = dst;
  j["identity"] = id;
  j["compose"] = comp;
  return dump(j);
}

FinCat fincat_from_json(const std::string& text) {
  json j = parse_text(text);
  int objects = expect_int(j, "objects", "fincat");
  std::vector<int> src = expect_int_array(j, "src", "fincat");
  std::vector<int> dst = expect_int_array(j, "dst", "fincat");
  std::vector<int> id = expect_int_array(j, "identity", "fincat");
  const json& comp = expect(j, "compose", "fincat");
  if (!comp.is_array() || comp.size() != src.size())
    throw ParseError("fincat.compose: expected one row per morphism");
  std::vector<int> flat;
  for (std::size_t g = 0; g < comp.size(); ++g) {
    const json& row = comp.at(g);
    if (!row.is_array() || row.size() != src.size())
      throw ParseError("fincat.compose[" + std::to_string(g) +
                       "]: expected one entry per morphism");
    for (const json& e : row) {
      if (!e.is_number_integer())
        throw ParseError("fincat.compose: entries must be integers");
      flat.push_back(e.get<int>());
    }
  }
  return wrap_parse("fincat", [&] {
    return FinCat(objects, std::move(src), std::move(dst), std::move(id),
                  std::move(flat));
  });
}

std::string bl_object_to_json(const EqObject& x) { return dump(bl_object_to_value(x)); }

EqObject bl_object_from_json(const std::string& text) {
  return bl_object_from_value(parse_text(text), "datum");
}

std::string bl_morphism_to_json(const EqMorphism& f) {
  json j;
  j["source"] = bl_object_to_value(f.source());
  j["target"] = bl_object_to_value(f.target());
  j["parts"] = json::array(
      {mat_to_value(f.part(0).matrix()), mat_to_value(f.part(1).matrix())});
  return dump(j);
}

EqMorphism bl_morphism_from_json(const std::string& text) {
  json j = parse_text(text);
  EqObject src = bl_object_from_value(expect(j, "source", "morphism"), "morphism.source");
  EqObject tgt = bl_object_from_value(expect(j, "target", "morphism"), "morphism.target");
  const json& parts = expect(j, "parts", "morphism");
  if (!parts.is_array() || parts.size() != 2)
    throw ParseError("morphism.parts: expected exactly two lane matrices");
  Mat p0 = mat_from_value(parts.at(0), "morphism.parts[0]");
  Mat p1 = mat_from_value(parts.at(1), "morphism.parts[1]");
  return wrap_parse("morphism", [&] {
    ModuleMap f0(src.carrier()[0], tgt.carrier()[0], std::move(p0));
    ModuleMap f1(src.carrier()[1], tgt.carrier()[1], std::move(p1));
    return EqMorphism(std::move(src), std::move(tgt), {std::move(f0), std::move(f1)});
  });
}

std::string cocycle_to_json(const Cocycle& c) { return dump(cocycle_to_value(c)); }

Cocycle cocycle_from_json(const std::string& text) {
  return cocycle_from_value(parse_text(text), "cocycle");
}

}  // namespace patchcat
