// Copyright 2026 The sixdls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIXDLS_CORE_HPP_
#define SIXDLS_CORE_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace sixdls {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy. The CLI maps ValidationError/DomainError/StateError to
// exit code 2 and NumericalError/DegenerateError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input is geometrically or physically degenerate (zero force, zero area,
/// rank-deficient samples, singular surface point).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to converge; carries the final residual.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Schema or file-level validation failure. `path` names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Operation invoked on an object in the wrong state.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Cache or constraint file that cannot be decoded.
class CorruptFileError : public ValidationError {
 public:
  explicit CorruptFileError(const std::string& what) : ValidationError("", what) {}
  CorruptFileError(const std::string& file, const std::string& what)
      : ValidationError(file, what) {}
};

/// File whose "v" field does not match the supported format version.
class FormatVersionError : public ValidationError {
 public:
  explicit FormatVersionError(const std::string& what) : ValidationError("", what) {}
  FormatVersionError(const std::string& file, const std::string& what)
      : ValidationError(file, what) {}
};

inline constexpr int kFormatVersion = 1;

namespace detail {
inline std::atomic<int>& thread_setting() {
  static std::atomic<int> threads{1};
  return threads;
}
inline bool& in_worker() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

/// Worker count used by parallel_for. Values < 1 select hardware concurrency.
inline void set_thread_count(int n) { detail::thread_setting().store(n); }

inline int thread_count() {
  int n = detail::thread_setting().load();
  if (n < 1) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

/// Runs fn(i) for i in [0, n). Each index is handled by exactly one worker,
/// so callers writing to slot i get schedule-independent results. Nested
/// calls from inside a worker run serially.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      detail::in_worker() ? 1 : std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      detail::in_worker() = true;
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

}  // namespace sixdls

#endif  // SIXDLS_CORE_HPP_
