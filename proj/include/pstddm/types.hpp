#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pstddm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

// Axis-aligned rectangle [x1_min, x1_max] x [x2_min, x2_max].
struct Rect {
  double x1_min = 0.0;
  double x1_max = 0.0;
  double x2_min = 0.0;
  double x2_max = 0.0;

  [[nodiscard]] bool contains(Point p) const {
    return p.x1 >= x1_min && p.x1 <= x1_max && p.x2 >= x2_min && p.x2 <= x2_max;
  }
  [[nodiscard]] double width() const { return x1_max - x1_min; }
  [[nodiscard]] double height() const { return x2_max - x2_min; }
};

enum class Axis { X1, X2 };

// Invalid geometry, partition or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A linear solve or factorization failed.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public SolverError {
 public:
  SingularMatrixError(const std::string& what, long pivot) : SolverError(what), pivot_(pivot) {}
  [[nodiscard]] long pivot() const { return pivot_; }

 private:
  long pivot_;
};

}  // namespace pstddm
