#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qks/fiber.hpp"
#include "qks/series.hpp"
#include "qks/skewring.hpp"

namespace qks {

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Localization { none, torus, denominator, torus_denominator };
std::string to_string(Localization l);
Localization parse_localization(const std::string& s);

struct CaseParams {
  std::string id;  // 0, i, ii, iii, iv
  int n = 0;
  int k = 0;                       // order of q in case i
  std::optional<Rational> q;       // non-root-of-unity q in case i
  std::optional<Localization> localization;  // default depends on the case
};

using Values = std::vector<Cyclotomic>;

// A generator whose value follows from the others: expr, or 1/expr when inverse is set.
struct DerivedGenerator {
  std::string name;
  CommPoly expr;
  bool inverse = false;
};

struct CaseSpec {
  CaseParams params;
  Localization localization = Localization::none;
  std::string label;  // e.g. "iii(n=3, torus+denominator)"
  long conductor = 1;
  AlgebraPtr algebra;
  GroupSpec group;
  RingPtr ring;
  bool pointwise = false;  // PI with a fiber recipe
  bool x_outer = false;
  std::optional<int> expected_d;  // Azumaya with fibers M_d; empty when the ring is not Azumaya

  CentralPresentation presentation;
  std::vector<DerivedGenerator> derived;
  // Sampling coordinates and their lift to generator values.
  std::vector<std::string> parameters;
  std::function<std::map<std::string, Cyclotomic>(const Values&)> lift;
  std::function<FiberRecipe(const Values&)> recipe;

  // Coordinates on Z(A) permuted by G, with the localization constraints.
  std::optional<CoordinateSystem> base_center;
  std::vector<CommPoly> base_nonvanishing;
  std::function<std::map<std::string, Cyclotomic>(const Values&)> base_to_center;
};

CaseSpec make_case(const CaseParams& p);
std::vector<CaseParams> catalog_cases();  // the cases exercised by scans and tests

// Fills derived generators and orders values as in the presentation.
Values complete_point(const CaseSpec& c, const std::map<std::string, Cyclotomic>& given);
std::optional<std::string> point_problem(const CaseSpec& c, const Values& v);

// Seeded pool of small rationals times roots of unity of the conductor.
class ValuePool {
 public:
  ValuePool(long conductor, std::uint64_t seed);
  Cyclotomic draw();
  std::uint64_t next(std::uint64_t bound) { return rng_() % bound; }

 private:
  long conductor_;
  std::mt19937_64 rng_;
  std::vector<Rational> magnitudes_;
};

struct SampledPoint {
  Values parameters;
  Values values;  // generator values in presentation order
};
// Draws parameters until the lifted point is admissible; nullopt after `retries` failures.
std::optional<SampledPoint> sample_point(const CaseSpec& c, ValuePool& pool, int retries = 200,
                                         std::string* last_problem = nullptr);
// Generator values over a point of Z(A); nullopt with the reason when inadmissible.
std::optional<Values> lift_base_point(const CaseSpec& c, const Values& base, std::string* problem = nullptr);
bool base_point_admissible(const CaseSpec& c, const Values& base);

// Series data used by series_check.
struct SeriesCase {
  std::string name;
  std::vector<Matrix> representation;
  RationalFunctionSeries closed_form;
  std::string closed_form_text;
};
SeriesCase series_case(const std::string& kind, int m);

// Prop-style presentation for k_{-1}[u,v] # D_n, n = 2m even: x, y, z with x^2 y + y^{m+1} + z^2 = 0.
CentralPresentation dihedral_even_presentation(const RingPtr& ring, int n);

}  // namespace qks
