#pragma once

#include <complex>
#include <compare>
#include <stdexcept>
#include <string>

namespace slocc {

using Complex = std::complex<double>;

// Default elementwise tolerance for all numerical identity checks.
inline constexpr double kTol = 1e-12;
// Coefficients below this magnitude are pruned after canonicalization,
// so fermionic cancellations come out exactly zero in comparisons.
inline constexpr double kPruneTol = 1e-15;

/// Exchange-statistics sign: +1 for bosons, -1 for fermions.
enum class Statistics : int { Boson = +1, Fermion = -1 };

inline double eta(Statistics s) { return static_cast<double>(static_cast<int>(s)); }

inline const char* name(Statistics s) {
  return s == Statistics::Boson ? "boson" : "fermion";
}

/// Two-level internal degree of freedom. Down orders before Up so that
/// the |down> component maps to index 0 in qubit bases.
enum class Spin : int { Down = 0, Up = 1 };

inline Spin flip(Spin s) { return s == Spin::Down ? Spin::Up : Spin::Down; }

inline const char* name(Spin s) { return s == Spin::Down ? "down" : "up"; }

/// Named localized spatial region (e.g. "L", "R", "Lp").
using Region = std::string;

/// One basis mode of the single-particle space: a region/spin pair.
struct Mode {
  Region region;
  Spin spin;

  auto operator<=>(const Mode&) const = default;

  std::string label() const { return region + ":" + name(spin); }
};

/// Raised when a self-consistency check fails inside the library
/// (e.g. a self-overlap with a non-negligible imaginary part).
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace slocc
