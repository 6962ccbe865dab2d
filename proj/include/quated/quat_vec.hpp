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

#ifndef QUATED_QUAT_VEC_HPP
#define QUATED_QUAT_VEC_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "quated/quaternion.hpp"

namespace quated {

/// Anything indexable as a sequence of quaternions: QuatVec, its views and
/// embedding-table rows all model this.
template <class V>
concept QuatSequence = requires(const V& v, std::size_t i) {
  typename V::value_type;
  { v.size() } -> std::convertible_to<std::size_t>;
  { v[i] } -> std::same_as<Quaternion<typename V::value_type>>;
};

/// Read-only view of k quaternions stored as four component arrays.
template <std::floating_point T>
struct BasicQuatView {
  using value_type = T;

  std::span<const T> a, b, c, d;

  std::size_t size() const noexcept { return a.size(); }
  Quaternion<T> operator[](std::size_t i) const noexcept { return {a[i], b[i], c[i], d[i]}; }
};

/// Mutable view; used for in-place optimizer updates of embedding rows.
template <std::floating_point T>
struct BasicQuatSpan {
  using value_type = T;

  std::span<T> a, b, c, d;

  std::size_t size() const noexcept { return a.size(); }
  Quaternion<T> operator[](std::size_t i) const noexcept { return {a[i], b[i], c[i], d[i]}; }
  void set(std::size_t i, const Quaternion<T>& q) noexcept {
    a[i] = q.a;
    b[i] = q.b;
    c[i] = q.c;
    d[i] = q.d;
  }
  operator BasicQuatView<T>() const noexcept { return {a, b, c, d}; }
};

/// A k-coordinate quaternion vector: Q = a + b i + c j + d k with a, b, c, d in R^k.
template <std::floating_point T>
class QuatVecT {
public:
  using value_type = T;

  QuatVecT() = default;
  explicit QuatVecT(std::size_t k) : a_(k), b_(k), c_(k), d_(k) {}
  QuatVecT(std::vector<T> a, std::vector<T> b, std::vector<T> c, std::vector<T> d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (b_.size() != a_.size()) throw DimensionMismatch(a_.size(), b_.size());
    if (c_.size() != a_.size()) throw DimensionMismatch(a_.size(), c_.size());
    if (d_.size() != a_.size()) throw DimensionMismatch(a_.size(), d_.size());
  }

  template <QuatSequence V>
    requires std::same_as<typename V::value_type, T>
  static QuatVecT from(const V& v) {
    QuatVecT out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.set(i, v[i]);
    return out;
  }

  /// k copies of q.
  static QuatVecT filled(std::size_t k, const Quaternion<T>& q) {
    QuatVecT out(k);
    for (std::size_t i = 0; i < k; ++i) out.set(i, q);
    return out;
  }

  std::size_t size() const noexcept { return a_.size(); }
  Quaternion<T> operator[](std::size_t i) const noexcept { return {a_[i], b_[i], c_[i], d_[i]}; }
  void set(std::size_t i, const Quaternion<T>& q) noexcept {
    a_[i] = q.a;
    b_[i] = q.b;
    c_[i] = q.c;
    d_[i] = q.d;
  }

  std::span<const T> a() const noexcept { return a_; }
  std::span<const T> b() const noexcept { return b_; }
  std::span<const T> c() const noexcept { return c_; }
  std::span<const T> d() const noexcept { return d_; }
  std::span<T> a() noexcept { return a_; }
  std::span<T> b() noexcept { return b_; }
  std::span<T> c() noexcept { return c_; }
  std::span<T> d() noexcept { return d_; }

  BasicQuatView<T> view() const noexcept { return {a_, b_, c_, d_}; }
  BasicQuatSpan<T> span() noexcept { return {a_, b_, c_, d_}; }
  operator BasicQuatView<T>() const noexcept { return view(); }

  friend bool operator==(const QuatVecT&, const QuatVecT&) = default;

private:
  std::vector<T> a_, b_, c_, d_;
};

using QuatVec = QuatVecT<double>;
using QuatView = BasicQuatView<double>;
using QuatSpan = BasicQuatSpan<double>;

namespace detail {
template <QuatSequence P, QuatSequence Q>
void require_same_size(const P& p, const Q& q) {
  if (p.size() != q.size()) throw DimensionMismatch(p.size(), q.size());
}

template <QuatSequence P, class F>
auto map_coords(const P& p, F&& f) {
  using T = typename P::value_type;
  QuatVecT<T> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out.set(i, f(p[i]));
  return out;
}

template <QuatSequence P, QuatSequence Q, class F>
auto zip_coords(const P& p, const Q& q, F&& f) {
  require_same_size(p, q);
  using T = typename P::value_type;
  QuatVecT<T> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out.set(i, f(p[i], q[i]));
  return out;
}
}  // namespace detail

// Coordinate-wise counterparts of the scalar operations. Coordinate i of the
// result is the scalar operation applied to coordinate i of the operands.

template <QuatSequence P, QuatSequence Q>
auto add_sub(const P& p, const Q& q, Sign sign) {
  return detail::zip_coords(p, q, [sign](const auto& x, const auto& y) { return add_sub(x, y, sign); });
}

template <QuatSequence P>
auto conjugate(const P& p) {
  return detail::map_coords(p, [](const auto& x) { return conjugate(x); });
}

template <QuatSequence P, QuatSequence Q>
auto hamilton(const P& p, const Q& q) {
  return detail::zip_coords(p, q, [](const auto& x, const auto& y) { return hamilton(x, y); });
}

/// Every coordinate becomes a unit quaternion; throws ZeroQuaternion if any cannot.
template <QuatSequence P>
auto normalize(const P& p) {
  return detail::map_coords(p, [](const auto& x) { return normalize(x); });
}

template <QuatSequence P>
auto norm_sq(const P& p) {
  std::vector<typename P::value_type> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = norm_sq(p[i]);
  return out;
}

template <QuatSequence P>
auto magnitude(const P& p) {
  std::vector<typename P::value_type> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = magnitude(p[i]);
  return out;
}

template <QuatSequence P, QuatSequence Q>
auto dot(const P& p, const Q& q) {
  detail::require_same_size(p, q);
  std::vector<typename P::value_type> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = dot(p[i], q[i]);
  return out;
}

/// Sum of squares over all 4k real components.
template <QuatSequence P>
auto total_norm_sq(const P& p) {
  typename P::value_type s{};
  for (std::size_t i = 0; i < p.size(); ++i) s += norm_sq(p[i]);
  return s;
}

/// Euclidean distance over all 4k real components.
template <QuatSequence P, QuatSequence Q>
auto distance(const P& p, const Q& q) {
  detail::require_same_size(p, q);
  typename P::value_type s{};
  for (std::size_t i = 0; i < p.size(); ++i) s += norm_sq(p[i] - q[i]);
  return std::sqrt(s);
}

template <QuatSequence P>
bool is_finite(const P& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!is_finite(p[i])) return false;
  return true;
}

}  // namespace quated

#endif  // QUATED_QUAT_VEC_HPP
