#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qks/catalog.hpp"
#include "qks/fiber.hpp"

namespace qks {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExitCode : int { consistent = 0, mismatch = 1, inconclusive = 2, usage = 3 };

struct PointRecord {
  std::size_t index = 0;
  std::string origin;  // "probe" (fixed point of a group element) or "sample"
  Values values;       // generator values in presentation order
  std::size_t fiber_dim = 0;
  MatrixCertificate certificate;
  double seconds = 0;
};

struct ScanReport {
  CaseParams params;
  std::string label;
  Localization localization = Localization::none;
  long conductor = 1;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<std::string> value_names;
  std::vector<PointRecord> points;
  std::string verdict;
  std::optional<int> expected_d;
  bool pass = false;
  ExitCode exit_code = ExitCode::consistent;
  double seconds = 0;
};

// Certifies the fibers at probe points and `samples` seeded random points.
ScanReport azumaya_scan(const CaseSpec& c, int samples, std::uint64_t seed);

struct FreenessPoint {
  std::size_t index = 0;
  std::string origin;
  Values base;                         // coordinates on Z(A)
  std::vector<std::string> stabilizer;  // group element names
  std::optional<std::size_t> fiber_dim;
  std::optional<MatrixCertificate> certificate;
  std::string lift_problem;  // why no fiber was built
};

struct FreenessReport {
  CaseParams params;
  std::string label;
  Localization localization = Localization::none;
  long conductor = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> coordinate_names;
  std::vector<FreenessPoint> points;
  std::string verdict;  // "free" or "not-free"
  std::string witness;  // first point with a nontrivial stabilizer
  // Per point: trivial stabilizer exactly when the fiber certifies.
  bool azumaya_agreement = true;
  std::optional<int> expected_d;
  bool pass = false;
  ExitCode exit_code = ExitCode::consistent;
  double seconds = 0;
};

FreenessReport freeness_scan(const CaseSpec& c, int samples, std::uint64_t seed);

struct AuslanderDegree {
  int degree = 0;
  std::size_t skew_dim = 0;             // dim (A#G)_j
  std::size_t hom_dim_guard = 0;        // truncated Hom at guard
  std::size_t hom_dim_next_guard = 0;   // truncated Hom at guard + 2
  bool stable = false;
  bool injective = false;  // natural map (A#G)_j -> Hom_j
  bool agree = false;      // stable and equal to skew_dim
};

struct AuslanderReport {
  CaseParams params;
  std::string label;
  int degree = 0;
  int guard = 0;
  int projection_degree = 0;
  std::vector<AuslanderDegree> degrees;
  std::string verdict;  // "agree", "disagree" or "inconclusive"
  bool pass = false;
  ExitCode exit_code = ExitCode::consistent;
  double seconds = 0;
};

// Truncated graded Hom_{A^G}(A, A)_j of right A^G-modules on A_{<= top}, projected to source degrees <= projection.
std::size_t truncated_hom_dimension(const AlgebraPtr& a, const GroupSpec& g, int j, int top, int projection);
AuslanderReport auslander_check(const CaseSpec& c, int degree, int guard);

struct SeriesReport {
  std::string kind;
  int m = 0;
  int degree = 0;
  std::string molien;
  std::string closed_form;
  bool closed_form_equal = false;
  std::vector<Cyclotomic> expansion;
  std::vector<long> counts;
  bool counts_match = false;
  bool pass = false;
  ExitCode exit_code = ExitCode::consistent;
  double seconds = 0;
};

SeriesReport series_check(const std::string& kind, int m, int degree);

struct CenterPiece {
  int degree = 0;
  std::vector<std::string> basis;
};

struct CenterReport {
  std::string command;  // "center" or "invariants"
  CaseParams params;
  std::string label;
  long conductor = 1;
  int degree = 0;
  std::vector<CenterPiece> pieces;
  // Center only: generators, relations and the generating set check when the catalog has a presentation.
  std::vector<std::string> generators;
  std::vector<std::string> relations;
  std::optional<GeneratingSetReport> generating_set;
  bool pass = true;
  ExitCode exit_code = ExitCode::consistent;
};

CenterReport center_report(const CaseSpec& c, int degree);
CenterReport invariants_report(const CaseSpec& c, int degree);

struct FiberReport {
  CaseParams params;
  std::string label;
  long conductor = 1;
  std::vector<std::string> value_names;
  Values values;
  std::size_t fiber_dim = 0;
  MatrixCertificate certificate;
  std::size_t radical_dim = 0;
  std::size_t semisimple_dim = 0;
  std::size_t semisimple_center_dim = 0;
  ExitCode exit_code = ExitCode::consistent;
};

// `given` maps generator or parameter names to values.
FiberReport fiber_report(const CaseSpec& c, const std::map<std::string, Cyclotomic>& given);

enum class Format { human, json };
Format parse_format(const std::string& s);

std::string render(const ScanReport& r, Format f);
std::string render(const FreenessReport& r, Format f);
std::string render(const AuslanderReport& r, Format f);
std::string render(const SeriesReport& r, Format f);
std::string render(const CenterReport& r, Format f);
std::string render(const FiberReport& r, Format f);

// Writes to `path`, or to stdout when it is empty or "-"; throws io_error.
void write_output(const std::string& text, const std::string& path);

template <class Report>
ExitCode emit_report(const Report& r, Format f, const std::string& path) {
  write_output(render(r, f), path);
  return r.exit_code;
}

}  // namespace qks
