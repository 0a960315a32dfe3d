#include <doctest.h>

#include <string>

#include <json.hpp>

#include "helpers.hpp"
#include "patchcat/birkhoff.hpp"
#include "patchcat/fincat.hpp"
#include "patchcat/json_io.hpp"
#include "patchcat/patching.hpp"
#include "patchcat/report.hpp"
#include "patchcat/rng.hpp"

using namespace patchcat;
using namespace patchcat::testing;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

template <typename T, typename ToJson, typename FromJson>
void roundtrip(const T& value, ToJson&& to, FromJson&& from) {
  std::string first = to(value);
  T reparsed = from(first);
  CHECK(to(reparsed) == first);
}

}  // namespace

TEST_SUITE("json_report") {

TEST_CASE("rings round-trip byte-exactly") {
  for (BaseField f : {prime_field(5), rationals_field()}) {
    for (const RingDesc& r : {ring_scalars(f), ring_poly(f), ring_laurent(f),
                              ring_local_at_zero(f), ring_rational_functions(f)}) {
      roundtrip(r, ring_to_json, ring_from_json);
    }
  }
}

TEST_CASE("matrices over every ring kind round-trip byte-exactly") {
  Rng rng(51);
  for (BaseField f : {prime_field(5), rationals_field()}) {
    for (const RingDesc& r : {ring_scalars(f), ring_poly(f), ring_laurent(f),
                              ring_local_at_zero(f), ring_rational_functions(f)}) {
      Mat m = random_mat(rng, r, 2, 3, 2, 4);
      roundtrip(m, mat_to_json, mat_from_json);
    }
  }
}

TEST_CASE("modules and maps revalidate on parse") {
  BaseField f5 = prime_field(5);
  RingDesc kt = ring_poly(f5);
  PresentedModule m = cyclic(kt, RingElem::t(kt));
  PresentedModule n = cyclic(kt, RingElem::t_power(kt, 2));
  roundtrip(m, module_to_json, module_from_json);
  ModuleMap f(m, n, mat1(RingElem::t(kt)));
  roundtrip(f, module_map_to_json, module_map_from_json);

  // corrupt the matrix so the map is no longer well defined
  nlohmann::json j = nlohmann::json::parse(module_map_to_json(f));
  j["matrix"]["entries"][0]["num"] = {"1"};
  CHECK_THROWS_AS(module_map_from_json(j.dump()), ParseError);
}

TEST_CASE("finite categories round-trip and revalidate") {
  for (const FinCat& c : {arrow_category(), walking_isomorphism(),
                          cyclic_group_category(3), discrete_category(2)}) {
    roundtrip(c, fincat_to_json, fincat_from_json);
  }
  // breaking associativity must be rejected with a location: in Z/3 set
  // g*g = g, so (g*g)*g^2 = id while g*(g*g^2) = g
  nlohmann::json j = nlohmann::json::parse(fincat_to_json(cyclic_group_category(3)));
  j["compose"][1][1] = 1;
  try {
    fincat_from_json(j.dump());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(contains(e.what(), "fincat"));
  }
}

TEST_CASE("two-lane objects and morphisms round-trip byte-exactly") {
  BaseField f5 = prime_field(5);
  PatchingContext pc = bl_context(f5);
  Rng rng(53);
  EqObject x = random_eq_object(rng, pc.eq, 2, 2);
  roundtrip(x, bl_object_to_json, bl_object_from_json);
  EqMorphism ident = EqMorphism::identity(x);
  roundtrip(ident, bl_morphism_to_json, bl_morphism_from_json);

  EqObject y = random_eq_object(rng, pc.eq, 2, 2);
  roundtrip(EqMorphism::zero(x, y), bl_morphism_to_json, bl_morphism_from_json);
}

TEST_CASE("non-invertible glue is rejected with a location") {
  BaseField f5 = prime_field(5);
  PatchingContext pc = bl_context(f5);
  EqObject u = eq_unit(pc.eq);
  // the unit glue is the 1x1 identity; zero out its numerator
  nlohmann::json j = nlohmann::json::parse(bl_object_to_json(u));
  j["glue"]["entries"][0]["num"] = {"0"};
  try {
    bl_object_from_json(j.dump());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(contains(e.what(), "glue"));
  }
}

TEST_CASE("cocycles round-trip byte-exactly") {
  Rng rng(57);
  for (BaseField f : {prime_field(5), rationals_field()}) {
    RingDesc lau = ring_laurent(f);
    for (int i = 0; i < 3; ++i) {
      Cocycle c = random_cocycle(rng, lau, 2, 2);
      roundtrip(c, cocycle_to_json, cocycle_from_json);
    }
  }
}

TEST_CASE("cocycle parse errors name the offending entry") {
  std::string bad = R"({"field": "f5", "n": 2, "entries":
      [[{"0": "1"}, {"x": "1"}], [{}, {"0": "1"}]]})";
  try {
    cocycle_from_json(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(contains(e.what(), "entries[0][1]"));
  }
  std::string singular = R"({"field": "f5", "n": 1, "entries": [[{}]]})";
  CHECK_THROWS_AS(cocycle_from_json(singular), ParseError);
}

TEST_CASE("json reports are deterministic and text reports render") {
  std::string payload = R"({"b": [1, 2], "a": {"nested": true}, "passed": true})";
  std::string r1 = render_json_report(payload);
  std::string r2 = render_json_report(payload);
  CHECK(r1 == r2);
  CHECK(!contains(r1, "timestamp"));
  std::string stamped = render_json_report(payload, "2026-01-01T00:00:00Z");
  CHECK(contains(stamped, "\"timestamp\": \"2026-01-01T00:00:00Z\""));

  std::string text = render_text_report(payload);
  CHECK(contains(text, "passed: true"));
  CHECK(contains(text, "nested: true"));

  CHECK_THROWS_AS(render_json_report("{not json"), ParseError);
}

TEST_CASE("timestamps are RFC 3339 UTC") {
  std::string ts = current_timestamp();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == 'Z');
}

}  // TEST_SUITE
