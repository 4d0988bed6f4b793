#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqg/observation.hpp"

namespace sqg {

/// Canonical test-field families for the interpolant property suite.
/// All are mean-zero, band-limited well inside the dealias cutoff.
struct PropertyTestFields {
  std::vector<SpectralField> smooth;     // red spectrum, low band
  std::vector<SpectralField> rough;      // flat spectrum up to near the cutoff
  std::vector<SpectralField> broadband;  // slowly decaying power-law tail

  static PropertyTestFields standard(const GridSpec& grid, std::uint64_t seed);
};

struct PropertySample {
  double h = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio() const { return rhs == 0.0 ? lhs : lhs / rhs; }
};

struct PropertyRecord {
  std::string property_id;
  std::vector<PropertySample> samples;
  double fitted_slope = 0.0;
  double fitted_constant = 0.0;
  bool pass = false;
};

struct PropertyReport {
  std::vector<PropertyRecord> records;
  bool all_pass() const;
  const PropertyRecord* find(const std::string& id) const;
  /// CSV: property_id,h,lhs,rhs,ratio,fitted_slope,fitted_constant,pass
  void write_csv(std::ostream& os) const;
};

/// Empirical verification of the interpolant axioms across >= 4 resolutions.
///
/// Boundedness (0.1, 0.2, 0.3) runs for every variant; the approximation
/// identities 1.1/1.2 and 2.1/2.2 run for the variants whose Type claims them
/// (modal operators, being Type II, are exercised on both sets). Exponent fits
/// are least squares on log(ratio) vs log(h); default tolerance 0.15.
PropertyReport verify_properties(ObsKind kind, const std::vector<int>& resolutions,
                                 const GridSpec& grid, const PropertyTestFields& fields,
                                 double tol = 0.15);

/// Same suite over prebuilt operators (lets callers share partitions).
PropertyReport verify_properties(const std::vector<ObservationOperator>& ops,
                                 const GridSpec& grid, const PropertyTestFields& fields,
                                 double tol = 0.15);

}  // namespace sqg
