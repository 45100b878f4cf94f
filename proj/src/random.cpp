#include "psr/random.hpp"

#include <cmath>

namespace psr {

double Xoshiro256StarStar::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 == 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  have_spare_ = true;
  spare_ = r * std::sin(2.0 * kPi * u2);
  return r * std::cos(2.0 * kPi * u2);
}

int Xoshiro256StarStar::uniform_int(int n) {
  if (n < 1) throw std::invalid_argument("empty range");
  // Rejection keeps the draw unbiased.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return static_cast<int>(x % bound);
}

Vector Xoshiro256StarStar::haar_qubit() {
  Vector v(2);
  v(0) = Complex{gaussian(), gaussian()};
  v(1) = Complex{gaussian(), gaussian()};
  const double n = v.norm();
  if (n == 0.0) return haar_qubit();
  return v / n;
}

Matrix Xoshiro256StarStar::bloch_ball_state() {
  double x, y, z;
  do {
    x = 2.0 * uniform01() - 1.0;
    y = 2.0 * uniform01() - 1.0;
    z = 2.0 * uniform01() - 1.0;
  } while (x * x + y * y + z * z > 1.0);
  Matrix rho(2, 2);
  rho << Complex{1.0 + z, 0.0}, Complex{x, -y}, Complex{x, y}, Complex{1.0 - z, 0.0};
  return 0.5 * rho;
}

Xoshiro256StarStar stream_for(std::uint64_t seed, std::uint64_t item) {
  // Golden-ratio spacing keeps distinct items on distinct seeds.
  return Xoshiro256StarStar(seed ^ (0x9e3779b97f4a7c15ULL * (item + 1)));
}

}  // namespace psr
