#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qks/workbench.hpp"

using namespace qks;

namespace {

CaseSpec case_of(const std::string& id, int n, int k, Localization loc) {
  return make_case({id, n, k, std::nullopt, loc});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// dim of k[s, p] with deg s = 1, deg p = 2 in degree j.
long sym_dim(int j) { return j < 0 ? 0 : j / 2 + 1; }

}  // namespace

TEST_SUITE("workbench") {
  TEST_CASE("scan of the inner torus case") {
    auto r = azumaya_scan(case_of("i", 2, 2, Localization::torus), 10, 3);
    CHECK(r.points.size() == 10);
    CHECK(r.verdict == "azumaya-consistent(2)");
    CHECK(r.pass);
    CHECK(r.exit_code == ExitCode::consistent);
  }

  TEST_CASE("scan without the denominator finds a failing fiber") {
    auto r = azumaya_scan(case_of("ii", 0, 0, Localization::torus), 5, 4);
    std::size_t failing = 0;
    for (const auto& p : r.points) failing += !p.certificate.central_simple;
    CHECK(failing >= 1);
    CHECK(r.verdict.rfind("not-azumaya", 0) == 0);
    CHECK(r.pass);
  }

  TEST_CASE("case iv is not scanned") {
    auto r = azumaya_scan(case_of("iv", 0, 0, Localization::none), 5, 1);
    CHECK(r.verdict == "not-applicable: center too small for pointwise scan at torus level");
    CHECK(r.points.empty());
    CHECK(r.exit_code == ExitCode::consistent);
    CHECK_THROWS_AS(azumaya_scan(case_of("i", 2, 2, Localization::torus), 0, 1), usage_error);
  }

  TEST_CASE("verdict mismatch sets the exit code") {
    auto c = case_of("0", 0, 0, Localization::denominator);
    c.expected_d = 3;
    auto r = azumaya_scan(c, 4, 2);
    CHECK(r.verdict == "azumaya-consistent(2)");
    CHECK_FALSE(r.pass);
    CHECK(r.exit_code == ExitCode::mismatch);
  }

  TEST_CASE("reports are deterministic") {
    auto c = case_of("ii", 0, 0, Localization::torus_denominator);
    auto a = render(azumaya_scan(c, 6, 99), Format::json);
    auto b = render(azumaya_scan(c, 6, 99), Format::json);
    CHECK(a == b);
    CHECK(render(azumaya_scan(c, 6, 99), Format::human) == render(azumaya_scan(c, 6, 99), Format::human));
    CHECK(a != render(azumaya_scan(c, 6, 100), Format::json));
    auto f1 = render(freeness_scan(c, 6, 5), Format::json);
    CHECK(f1 == render(freeness_scan(c, 6, 5), Format::json));
  }

  TEST_CASE("json schema") {
    auto r = azumaya_scan(case_of("0", 0, 0, Localization::none), 3, 8);
    auto j = nlohmann::json::parse(render(r, Format::json));
    for (const char* key : {"case", "params", "seed", "conductor", "points", "verdict", "expected_d", "pass"}) {
      CHECK_MESSAGE(j.contains(key), key);
    }
    CHECK(j["case"] == "0");
    CHECK(j["seed"] == 8);
    CHECK(j["expected_d"].is_null());
    REQUIRE(j["points"].size() == r.points.size());
    for (const auto& p : j["points"]) {
      CHECK(p.contains("values"));
      CHECK(p.contains("fiber_dim"));
      CHECK(p.contains("certificate"));
      CHECK(p.contains("d") != p.contains("witness"));
    }
  }

  TEST_CASE("emit_report writes files and reports io errors") {
    auto r = series_check("trivial", 2, 5);
    std::string path = "qks_test_report.json";
    CHECK(emit_report(r, Format::json, path) == ExitCode::consistent);
    auto text = read_file(path);
    CHECK(text == render(r, Format::json));
    std::remove(path.c_str());
    CHECK_THROWS_AS(emit_report(r, Format::json, "/nonexistent-dir/x/report.json"), io_error);
    CHECK_THROWS_AS(parse_format("xml"), usage_error);
  }

  TEST_CASE("freeness verdicts") {
    auto free_case = freeness_scan(case_of("0", 0, 0, Localization::denominator), 10, 1);
    CHECK(free_case.verdict == "free");
    CHECK(free_case.pass);

    auto plain = freeness_scan(case_of("0", 0, 0, Localization::none), 10, 1);
    CHECK(plain.verdict == "not-free");
    CHECK(plain.azumaya_agreement);
    REQUIRE_FALSE(plain.points.empty());
    // the stabilized witness has u = v
    bool found = false;
    for (const auto& p : plain.points) {
      if (p.stabilizer.size() > 1) {
        found = true;
        CHECK(p.base[0] == p.base[1]);
        REQUIRE(p.certificate);
        CHECK_FALSE(p.certificate->central_simple);
      }
    }
    CHECK(found);

    auto odd = freeness_scan(case_of("iii", 3, 0, Localization::torus_denominator), 6, 2);
    CHECK(odd.verdict == "free");
    CHECK(odd.pass);
    CHECK_THROWS_AS(freeness_scan(case_of("iv", 0, 0, Localization::none), 3, 1), usage_error);
  }

  TEST_CASE("freeness and azumaya verdicts agree on X-outer cases") {
    for (const auto& params : catalog_cases()) {
      auto c = make_case(params);
      if (!c.x_outer || !c.pointwise) continue;
      auto scan = azumaya_scan(c, 6, 17);
      auto fr = freeness_scan(c, 6, 17);
      INFO(c.label);
      CHECK((fr.verdict == "free") == (scan.verdict.rfind("azumaya-consistent", 0) == 0));
      CHECK(fr.azumaya_agreement);
      CHECK(fr.pass);
      CHECK(scan.pass);
    }
  }

  TEST_CASE("rank bookkeeping") {
    for (const auto& params : catalog_cases()) {
      auto c = make_case(params);
      if (!c.expected_d) continue;
      auto r = azumaya_scan(c, 3, 23);
      REQUIRE(r.pass);
      long d = *c.expected_d;
      long g = c.group.order();
      INFO(c.label);
      if (c.x_outer) {
        // rank of A: 1 for a commutative base, k^2 for the quantum torus at q of order k
        long rank_a = c.params.id == "0" ? 1 : (c.params.id == "i" ? c.params.k * c.params.k : 4);
        CHECK(d * d == g * g * rank_a);
      } else if (c.params.id == "i") {
        CHECK(d == c.params.k);
      }
    }
  }

  TEST_CASE("auslander check") {
    for (const char* id : {"ii", "iv"}) {
      auto c = case_of(id, 0, 0, Localization::none);
      auto r = auslander_check(c, 4, 6);
      INFO(id);
      CHECK(r.verdict == "agree");
      CHECK(r.exit_code == ExitCode::consistent);
      REQUIRE(r.degrees.size() == 5);
      CHECK(r.degrees[0].skew_dim == 2);
      CHECK(r.degrees[0].hom_dim_next_guard == 2);
      for (const auto& row : r.degrees) {
        CHECK(row.stable);
        CHECK(row.injective);
        CHECK(row.skew_dim == static_cast<std::size_t>(2 * (row.degree + 1)));
      }
    }
    CHECK_THROWS_AS(auslander_check(case_of("ii", 0, 0, Localization::torus), 2, 6), usage_error);
  }

  TEST_CASE("truncated Hom detects a reflection group") {
    // S2 swapping the variables of k[u,v] is a reflection group: A = A^G + A^G (u - v) is free,
    // so End_j has dimension 2 a_j + a_{j-1} + a_{j+1} with a the Hilbert function of k[u+v, uv].
    auto a = AlgebraSpec::commutative();
    auto g = GroupSpec::symmetric2();
    for (int j = 0; j <= 3; ++j) {
      long expect = 2 * sym_dim(j) + sym_dim(j - 1) + sym_dim(j + 1);
      CHECK(truncated_hom_dimension(a, g, j, 4 + j + 6, 4) == static_cast<std::size_t>(expect));
    }
  }

  TEST_CASE("series checks") {
    auto d2 = series_check("dihedral", 2, 12);
    CHECK(d2.closed_form == "(1 - t^6) / ((1 - t^2)^2 (1 - t^2)(1 - t^3))");
    CHECK(d2.closed_form_equal);
    CHECK(d2.counts_match);
    auto c3 = series_check("cyclic", 3, 12);
    CHECK(c3.pass);
    auto t = series_check("trivial", 3, 6);
    CHECK(t.pass);
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
      CHECK(t.counts[i] == static_cast<long>((i + 1) * (i + 2) / 2));
    }
    CHECK_THROWS_AS(series_check("octahedral", 2, 4), usage_error);
  }

  TEST_CASE("center and invariant reports") {
    auto c = center_report(case_of("ii", 0, 0, Localization::torus_denominator), 4);
    REQUIRE(c.generating_set);
    CHECK(c.generating_set->ok);
    auto inv = invariants_report(case_of("iv", 0, 0, Localization::none), 4);
    std::map<int, std::size_t> dims;
    for (const auto& p : inv.pieces) dims[p.degree] = p.basis.size();
    // invariants of u, v -> -u, -v are the even-degree part
    CHECK(dims[0] == 1);
    CHECK(dims[1] == 0);
    CHECK(dims[2] == 3);
    CHECK(dims[3] == 0);
    CHECK(dims[4] == 5);
  }

  TEST_CASE("fiber report accepts parameters or generators") {
    auto c = case_of("0", 0, 0, Localization::none);
    auto byp = fiber_report(c, {{"a", Cyclotomic(1)}, {"b", Cyclotomic(2)}});
    auto byg = fiber_report(c, {{"s", Cyclotomic(3)}, {"p", Cyclotomic(2)}});
    CHECK(byp.values == byg.values);
    CHECK(byg.certificate.d == 2);
    auto deg = fiber_report(c, {{"s", Cyclotomic(2)}, {"p", Cyclotomic(1)}});
    CHECK(deg.radical_dim == 2);
    CHECK(deg.semisimple_center_dim == 2);
    CHECK_THROWS_AS(fiber_report(case_of("iv", 0, 0, Localization::none), {}), usage_error);
  }
}
