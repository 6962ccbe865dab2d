/*
 * Copyright (c) 2026 The quated Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QUATED_QUATERNION_HPP
#define QUATED_QUATERNION_HPP

#include <cmath>
#include <concepts>
#include <ostream>

#include "quated/errors.hpp"

namespace quated {

/// Magnitudes at or below this are treated as the zero quaternion by normalize().
inline constexpr double kNormEpsilon = 1e-12;

/// q = a + b i + c j + d k.
///
/// Plain aggregate; all operations are free functions so that the same
/// formulas can be reused coordinate-wise by QuatVec.
template <std::floating_point T>
struct Quaternion {
  T a{};  // scalar part
  T b{};  // i
  T c{};  // j
  T d{};  // k

  constexpr T scalar() const noexcept { return a; }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

using Quat = Quaternion<double>;

template <std::floating_point T>
constexpr Quaternion<T> operator+(const Quaternion<T>& p, const Quaternion<T>& q) noexcept {
  return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d};
}

template <std::floating_point T>
constexpr Quaternion<T> operator-(const Quaternion<T>& p, const Quaternion<T>& q) noexcept {
  return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d};
}

template <std::floating_point T>
constexpr Quaternion<T> operator-(const Quaternion<T>& q) noexcept {
  return {-q.a, -q.b, -q.c, -q.d};
}

template <std::floating_point T>
constexpr Quaternion<T> operator*(T s, const Quaternion<T>& q) noexcept {
  return {s * q.a, s * q.b, s * q.c, s * q.d};
}

enum class Sign { plus, minus };

template <std::floating_point T>
constexpr Quaternion<T> add_sub(const Quaternion<T>& p, const Quaternion<T>& q, Sign sign) noexcept {
  return sign == Sign::plus ? p + q : p - q;
}

template <std::floating_point T>
constexpr Quaternion<T> conjugate(const Quaternion<T>& q) noexcept {
  return {q.a, -q.b, -q.c, -q.d};
}

/// Squared magnitude a^2 + b^2 + c^2 + d^2 (equals q q*).
template <std::floating_point T>
constexpr T norm_sq(const Quaternion<T>& q) noexcept {
  return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}

template <std::floating_point T>
T magnitude(const Quaternion<T>& q) noexcept {
  return std::sqrt(norm_sq(q));
}

template <std::floating_point T>
constexpr T dot(const Quaternion<T>& p, const Quaternion<T>& q) noexcept {
  return p.a * q.a + p.b * q.b + p.c * q.c + p.d * q.d;
}

/// Hamilton product p (x) q.
template <std::floating_point T>
constexpr Quaternion<T> hamilton(const Quaternion<T>& p, const Quaternion<T>& q) noexcept {
  return {
      p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
      p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
      p.a * q.c + p.c * q.a + p.d * q.b - p.b * q.d,
      p.a * q.d + p.d * q.a + p.b * q.c - p.c * q.b,
  };
}

template <std::floating_point T>
constexpr Quaternion<T> operator*(const Quaternion<T>& p, const Quaternion<T>& q) noexcept {
  return hamilton(p, q);
}

/// q / |q|. Throws ZeroQuaternion when |q| <= kNormEpsilon.
template <std::floating_point T>
Quaternion<T> normalize(const Quaternion<T>& q) {
  const T m = magnitude(q);
  if (!(m > static_cast<T>(kNormEpsilon))) throw ZeroQuaternion();
  return {q.a / m, q.b / m, q.c / m, q.d / m};
}

template <std::floating_point T>
bool is_finite(const Quaternion<T>& q) noexcept {
  return std::isfinite(q.a) && std::isfinite(q.b) && std::isfinite(q.c) && std::isfinite(q.d);
}

template <std::floating_point T>
std::ostream& operator<<(std::ostream& os, const Quaternion<T>& q) {
  return os << '(' << q.a << ", " << q.b << ", " << q.c << ", " << q.d << ')';
}

namespace basis {
inline constexpr Quat one{1, 0, 0, 0};
inline constexpr Quat i{0, 1, 0, 0};
inline constexpr Quat j{0, 0, 1, 0};
inline constexpr Quat k{0, 0, 0, 1};
}  // namespace basis

}  // namespace quated

#endif  // QUATED_QUATERNION_HPP
