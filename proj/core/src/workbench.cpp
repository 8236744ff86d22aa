#include "qks/workbench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "qks/linalg.hpp"

namespace qks {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs body(i) for i < count on up to hardware_concurrency threads.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Values draw_values(ValuePool& pool, std::size_t n) {
  Values v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(pool.draw());
  return v;
}

// Fixed points of each non-identity element, lifted when admissible.
struct Probe {
  Values base;
  std::optional<Values> values;
  std::string problem;
};

std::vector<Probe> stabilized_probes(const CaseSpec& c, ValuePool& pool) {
  std::vector<Probe> out;
  if (!c.base_center) return out;
  const auto& cs = *c.base_center;
  for (const auto& f : c.group.elements()) {
    if (f == c.group.identity()) continue;
    Probe p;
    p.base = fixed_point_of(cs, c.group, f, draw_values(pool, cs.names.size()));
    p.values = lift_base_point(c, p.base, &p.problem);
    out.push_back(std::move(p));
  }
  return out;
}

std::string not_applicable_reason(const CaseSpec& c) {
  if (c.params.id == "iv") return "not-applicable: center too small for pointwise scan at torus level";
  if (c.params.id == "i" && c.params.q) return "not-applicable: q is not a root of unity, so T is not PI";
  return "not-applicable: no fiber recipe for localization " + to_string(c.localization);
}

}  // namespace

ScanReport azumaya_scan(const CaseSpec& c, int samples, std::uint64_t seed) {
  if (samples < 1) throw usage_error("samples must be at least 1");
  auto t0 = Clock::now();
  ScanReport r;
  r.params = c.params;
  r.label = c.label;
  r.localization = c.localization;
  r.conductor = c.conductor;
  r.seed = seed;
  r.samples = samples;
  r.expected_d = c.expected_d;
  if (!c.pointwise) {
    r.verdict = not_applicable_reason(c);
    r.pass = true;
    r.seconds = seconds_since(t0);
    return r;
  }
  r.value_names = c.presentation.names();

  ValuePool pool(c.conductor, seed);
  std::vector<std::pair<std::string, Values>> todo;
  if (c.x_outer) {
    for (auto& p : stabilized_probes(c, pool)) {
      if (p.values) todo.emplace_back("probe", std::move(*p.values));
    }
  }
  std::string problem;
  for (int s = 0; s < samples; ++s) {
    auto p = sample_point(c, pool, 200, &problem);
    if (!p) break;
    todo.emplace_back("sample", std::move(p->values));
  }
  if (todo.empty()) {
    r.verdict = "inconclusive: no admissible point (" + problem + ")";
    r.exit_code = ExitCode::inconclusive;
    r.seconds = seconds_since(t0);
    return r;
  }

  r.points.resize(todo.size());
  parallel_for(todo.size(), [&](std::size_t i) {
    auto ti = Clock::now();
    PointRecord& pr = r.points[i];
    pr.index = i;
    pr.origin = todo[i].first;
    pr.values = todo[i].second;
    auto f = build_fiber(c.ring, c.presentation, pr.values, c.recipe(pr.values));
    pr.fiber_dim = f.dim;
    pr.certificate = matrix_algebra_certificate(f);
    pr.seconds = seconds_since(ti);
  });

  std::size_t failing = 0;
  std::vector<long> ds;
  for (const auto& p : r.points) {
    if (!p.certificate.central_simple) {
      ++failing;
    } else if (std::find(ds.begin(), ds.end(), p.certificate.d) == ds.end()) {
      ds.push_back(p.certificate.d);
    }
  }
  if (failing > 0) {
    r.verdict = "not-azumaya (" + std::to_string(failing) + " of " + std::to_string(r.points.size()) +
                " points fail)";
  } else if (ds.size() > 1) {
    r.verdict = "not-azumaya (fiber ranks vary)";
  } else {
    r.verdict = "azumaya-consistent(" + std::to_string(ds.front()) + ")";
  }
  if (static_cast<int>(r.points.size()) < samples && r.verdict.rfind("azumaya-consistent", 0) == 0) {
    r.verdict = "inconclusive: only " + std::to_string(r.points.size()) + " admissible points (" + problem + ")";
    r.exit_code = ExitCode::inconclusive;
    r.seconds = seconds_since(t0);
    return r;
  }
  if (c.expected_d) {
    r.pass = r.verdict == "azumaya-consistent(" + std::to_string(*c.expected_d) + ")";
  } else {
    r.pass = r.verdict.rfind("not-azumaya", 0) == 0;
  }
  r.exit_code = r.pass ? ExitCode::consistent : ExitCode::mismatch;
  r.seconds = seconds_since(t0);
  return r;
}

FreenessReport freeness_scan(const CaseSpec& c, int samples, std::uint64_t seed) {
  if (samples < 1) throw usage_error("samples must be at least 1");
  if (!c.x_outer || !c.base_center) throw usage_error("freeness scan needs an X-outer case; " + c.label + " is not");
  auto t0 = Clock::now();
  FreenessReport r;
  r.params = c.params;
  r.label = c.label;
  r.localization = c.localization;
  r.conductor = c.conductor;
  r.seed = seed;
  r.expected_d = c.expected_d;
  const auto& cs = *c.base_center;
  r.coordinate_names = cs.names;

  ValuePool pool(c.conductor, seed);
  std::vector<std::pair<std::string, Values>> todo;
  for (auto& p : stabilized_probes(c, pool)) {
    if (base_point_admissible(c, p.base)) todo.emplace_back("probe", std::move(p.base));
  }
  for (int s = 0; s < samples; ++s) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      Values base = draw_values(pool, cs.names.size());
      if (!base_point_admissible(c, base)) continue;
      todo.emplace_back("sample", std::move(base));
      break;
    }
  }

  r.points.resize(todo.size());
  parallel_for(todo.size(), [&](std::size_t i) {
    FreenessPoint& p = r.points[i];
    p.index = i;
    p.origin = todo[i].first;
    p.base = todo[i].second;
    for (const auto& f : stabilizer_of_point(cs, c.group, p.base)) p.stabilizer.push_back(c.group.name(f));
    if (!c.pointwise) {
      p.lift_problem = "no fiber recipe for localization " + to_string(c.localization);
      return;
    }
    auto v = lift_base_point(c, p.base, &p.lift_problem);
    if (!v) return;
    auto fib = build_fiber(c.ring, c.presentation, *v, c.recipe(*v));
    p.fiber_dim = fib.dim;
    p.certificate = matrix_algebra_certificate(fib);
  });

  bool free = true;
  for (const auto& p : r.points) {
    bool trivial = p.stabilizer.size() == 1;
    if (!trivial && free) {
      free = false;
      std::string at;
      for (std::size_t k = 0; k < p.base.size(); ++k) {
        at += (k ? ", " : "") + cs.names[k] + " = " + p.base[k].to_string(c.conductor);
      }
      std::string stab;
      for (const auto& s : p.stabilizer) stab += (stab.empty() ? "" : ", ") + s;
      r.witness = "stabilizer {" + stab + "} at (" + at + ")";
    }
    if (p.certificate && p.certificate->central_simple != trivial) r.azumaya_agreement = false;
  }
  r.verdict = free ? "free" : "not-free";
  bool expected_free = c.expected_d.has_value();
  r.pass = free == expected_free && r.azumaya_agreement;
  r.exit_code = r.pass ? ExitCode::consistent : ExitCode::mismatch;
  r.seconds = seconds_since(t0);
  return r;
}

namespace {

std::vector<Monomial> monomials_of_degree(int i) {
  std::vector<Monomial> out;
  for (int a = i; a >= 0; --a) out.push_back({a, i - a});
  return out;
}

std::size_t position(const Monomial& m) { return static_cast<std::size_t>(m.b); }

// Algebra generators of A^G up to degree top: invariants outside the span of lower products.
std::vector<std::pair<int, TermMap>> invariant_generators(const AlgebraPtr& a, const GroupSpec& g, int top) {
  std::map<int, std::vector<TermMap>> inv;
  for (const auto& p : invariant_basis(a, g, top)) {
    for (const auto& x : p.basis) inv[p.degree].push_back(x.terms());
  }
  std::vector<std::pair<int, TermMap>> gens;
  for (int e = 1; e <= top; ++e) {
    auto it = inv.find(e);
    if (it == inv.end()) continue;
    auto coords = [e](const TermMap& t) {
      DenseVector v = zero_vector(static_cast<std::size_t>(e) + 1);
      for (const auto& [m, c] : t) v[position(m)] += c;
      return v;
    };
    EchelonBasis span(static_cast<std::size_t>(e) + 1);
    for (const auto& [ge, gt] : gens) {
      auto lower = inv.find(e - ge);
      if (lower == inv.end()) continue;
      for (const auto& b : lower->second) span.insert(coords(a->multiply(gt, b)));
    }
    for (const auto& x : it->second) {
      if (span.insert(coords(x))) gens.emplace_back(e, x);
    }
  }
  return gens;
}

// Unknowns phi(x)_w for source monomials x of degree <= top - j; sources above `projection` come first.
struct HomColumns {
  int j, top, projection;
  std::vector<std::size_t> offset;  // by source degree
  std::size_t high = 0, total = 0;

  HomColumns(int j_, int top_, int projection_) : j(j_), top(top_), projection(projection_) {
    offset.assign(static_cast<std::size_t>(top - j) + 1, 0);
    std::size_t at = 0;
    for (int i = projection + 1; i <= top - j; ++i) {
      offset[static_cast<std::size_t>(i)] = at;
      at += block(i);
    }
    high = at;
    for (int i = 0; i <= std::min(projection, top - j); ++i) {
      offset[static_cast<std::size_t>(i)] = at;
      at += block(i);
    }
    total = at;
  }
  std::size_t block(int i) const { return static_cast<std::size_t>(i + 1) * static_cast<std::size_t>(i + j + 1); }
  std::size_t column(const Monomial& x, const Monomial& w) const {
    return offset[static_cast<std::size_t>(x.degree())] + position(x) * static_cast<std::size_t>(x.degree() + j + 1) +
           position(w);
  }
};

}  // namespace

std::size_t truncated_hom_dimension(const AlgebraPtr& a, const GroupSpec& g, int j, int top, int projection) {
  if (a->laurent() || !a->denominators().empty()) throw usage_error("truncated Hom needs a graded polynomial algebra");
  if (j < 0 || top < j) throw usage_error("truncation below the requested degree");
  HomColumns cols(j, top, projection);
  auto gens = invariant_generators(a, g, top - j);
  EchelonBasis e(cols.total);
  // phi(x r) = phi(x) r for every source x and generator r of A^G inside the truncation.
  for (int i = 0; i <= top - j; ++i) {
    for (const auto& [deg, r] : gens) {
      if (i + deg > top - j) continue;
      std::map<Monomial, TermMap> right;  // w' r for targets w' of degree i + j
      for (const auto& w : monomials_of_degree(i + j)) right[w] = a->multiply({{w, Cyclotomic(1)}}, r);
      for (const auto& x : monomials_of_degree(i)) {
        TermMap xr = a->multiply({{x, Cyclotomic(1)}}, r);
        for (const auto& w : monomials_of_degree(i + deg + j)) {
          DenseVector row = zero_vector(cols.total);
          for (const auto& [xk, ck] : xr) row[cols.column(xk, w)] += ck;
          for (const auto& [wp, prod] : right) {
            auto it = prod.find(w);
            if (it != prod.end()) row[cols.column(x, wp)] -= it->second;
          }
          e.insert(std::move(row));
        }
      }
    }
  }
  std::size_t rank_high = 0;
  for (auto p : e.pivots()) rank_high += p < cols.high;
  // dim of the kernel projected to low sources = n_low - rank C + rank C_high
  return (cols.total - cols.high) - e.rank() + rank_high;
}

namespace {

// Rank of the natural map (A#G)_j -> Hom restricted to sources of degree <= projection.
std::size_t natural_map_rank(const AlgebraPtr& a, const GroupSpec& g, int j, int projection) {
  HomColumns cols(j, projection + j, projection);
  EchelonBasis e(cols.total);
  for (const auto& m : monomials_of_degree(j)) {
    for (const auto& f : g.elements()) {
      DenseVector v = zero_vector(cols.total);
      for (int i = 0; i <= projection; ++i) {
        for (const auto& x : monomials_of_degree(i)) {
          TermMap fx = apply_automorphism_terms(*a, g, f, {{x, Cyclotomic(1)}});
          for (const auto& [w, c] : a->multiply({{m, Cyclotomic(1)}}, fx)) v[cols.column(x, w)] += c;
        }
      }
      e.insert(std::move(v));
    }
  }
  return e.rank();
}

}  // namespace

AuslanderReport auslander_check(const CaseSpec& c, int degree, int guard) {
  if (degree < 0 || guard < 1) throw usage_error("auslander check needs degree >= 0 and guard >= 1");
  if (c.localization != Localization::none || c.algebra->laurent())
    throw usage_error("auslander check runs on the unlocalized graded algebra; use localization none");
  auto t0 = Clock::now();
  AuslanderReport r;
  r.params = c.params;
  r.label = c.label;
  r.degree = degree;
  r.guard = guard;
  r.projection_degree = std::max(degree, c.group.order());
  const std::size_t order = static_cast<std::size_t>(c.group.order());
  bool unstable = false, mismatch = false;
  r.degrees.resize(static_cast<std::size_t>(degree) + 1);
  parallel_for(r.degrees.size(), [&](std::size_t idx) {
    int j = static_cast<int>(idx);
    AuslanderDegree& row = r.degrees[idx];
    row.degree = j;
    Window w = make_window(*c.algebra, j);
    row.skew_dim = order * w.monomials(j).size();
    int top = r.projection_degree + j + guard;
    row.hom_dim_guard = truncated_hom_dimension(c.algebra, c.group, j, top, r.projection_degree);
    row.hom_dim_next_guard = truncated_hom_dimension(c.algebra, c.group, j, top + 2, r.projection_degree);
    row.stable = row.hom_dim_guard == row.hom_dim_next_guard;
    row.injective = natural_map_rank(c.algebra, c.group, j, r.projection_degree) == row.skew_dim;
    row.agree = row.stable && row.hom_dim_next_guard == row.skew_dim;
  });
  for (const auto& row : r.degrees) {
    if (!row.stable) unstable = true;
    else if (!row.agree || !row.injective) mismatch = true;
  }
  if (mismatch) {
    r.verdict = "disagree";
    r.exit_code = ExitCode::mismatch;
  } else if (unstable) {
    r.verdict = "inconclusive";
    r.exit_code = ExitCode::inconclusive;
  } else {
    r.verdict = "agree";
    r.pass = true;
  }
  r.seconds = seconds_since(t0);
  return r;
}

SeriesReport series_check(const std::string& kind, int m, int degree) {
  if (degree < 0) throw usage_error("degree must be nonnegative");
  auto t0 = Clock::now();
  SeriesCase sc = series_case(kind, m);
  SeriesReport r;
  r.kind = kind;
  r.m = m;
  r.degree = degree;
  auto f = molien_series(sc.representation);
  r.molien = f.to_string();
  r.closed_form = sc.closed_form_text;
  r.closed_form_equal = f == sc.closed_form;
  r.expansion = series_expand(f, degree);
  r.counts = invariant_dimensions(sc.representation, degree);
  r.counts_match = compare_with_counts(f, r.counts);
  r.pass = r.closed_form_equal && r.counts_match;
  r.exit_code = r.pass ? ExitCode::consistent : ExitCode::mismatch;
  r.seconds = seconds_since(t0);
  return r;
}

CenterReport center_report(const CaseSpec& c, int degree) {
  if (degree < 0) throw usage_error("degree must be nonnegative");
  CenterReport r;
  r.command = "center";
  r.params = c.params;
  r.label = c.label;
  r.conductor = c.conductor;
  r.degree = degree;
  for (const auto& p : center_basis(c.ring, degree)) {
    CenterPiece piece{p.degree, {}};
    for (const auto& x : p.basis) piece.basis.push_back(x.to_string(c.conductor));
    r.pieces.push_back(std::move(piece));
  }
  const auto& pres = c.presentation;
  if (!pres.generators.empty()) {
    for (const auto& g : pres.generators) r.generators.push_back(g.name + " = " + g.element.to_string(c.conductor));
    for (const auto& rel : pres.relations) r.relations.push_back(describe_relation(pres, rel));
    r.generating_set = verify_generating_set(pres, c.ring, degree);
    r.pass = r.generating_set->ok;
  }
  r.exit_code = r.pass ? ExitCode::consistent : ExitCode::mismatch;
  return r;
}

CenterReport invariants_report(const CaseSpec& c, int degree) {
  if (degree < 0) throw usage_error("degree must be nonnegative");
  CenterReport r;
  r.command = "invariants";
  r.params = c.params;
  r.label = c.label;
  r.conductor = c.conductor;
  r.degree = degree;
  for (const auto& p : invariant_basis(c.algebra, c.group, degree)) {
    CenterPiece piece{p.degree, {}};
    for (const auto& x : p.basis) piece.basis.push_back(x.to_string(c.conductor));
    r.pieces.push_back(std::move(piece));
  }
  return r;
}

FiberReport fiber_report(const CaseSpec& c, const std::map<std::string, Cyclotomic>& given) {
  if (!c.pointwise) throw usage_error(not_applicable_reason(c));
  FiberReport r;
  r.params = c.params;
  r.label = c.label;
  r.conductor = c.conductor;
  r.value_names = c.presentation.names();
  // Parameter names are accepted in place of generator values.
  bool by_parameters = !given.empty();
  for (const auto& [name, v] : given) {
    if (std::find(c.parameters.begin(), c.parameters.end(), name) == c.parameters.end()) by_parameters = false;
  }
  std::map<std::string, Cyclotomic> gens = given;
  if (by_parameters && given.size() == c.parameters.size()) {
    Values params;
    for (const auto& name : c.parameters) params.push_back(given.at(name));
    gens = c.lift(params);
  }
  r.values = complete_point(c, gens);
  if (auto problem = point_problem(c, r.values)) throw usage_error("inadmissible point: " + *problem);
  auto f = build_fiber(c.ring, c.presentation, r.values, c.recipe(r.values));
  r.fiber_dim = f.dim;
  r.certificate = matrix_algebra_certificate(f);
  r.radical_dim = jacobson_radical_dim(f);
  auto ss = semisimple_quotient(f);
  r.semisimple_dim = ss.dim;
  r.semisimple_center_dim = ss.dim == 0 ? 0 : center_dimension(ss);
  return r;
}

}  // namespace qks
