#pragma once

#include <stdexcept>
#include <string>

namespace eqw {

// Raised for contract violations: malformed inputs, shape mismatches,
// failed invariants.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

}  // namespace eqw
