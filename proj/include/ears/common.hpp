#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ears {

// All arithmetic in the library is exact. Lattice vectors and root
// coordinates are machine integers (coordinates stay tiny); cofactor growth
// inside matrix normal forms and the rational linear algebra on the extended
// representation space use arbitrary precision.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;  // row-major list of lattice vectors

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

// Every reportable failure carries a stable machine-readable code alongside
// the human message. CLI maps EarsError to exit code 2 and prints the code.
class EarsError : public std::runtime_error {
 public:
  EarsError(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw EarsError(code, msg);
}

inline void require(bool cond, const std::string& code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

inline IVec operator+(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IVec operator-(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IVec operator-(const IVec& a) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline IVec operator*(long long c, const IVec& a) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const IVec& a) {
  for (long long x : a)
    if (x != 0) return false;
  return true;
}

inline std::string to_string(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace ears
