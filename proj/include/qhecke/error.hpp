#pragma once

#include <stdexcept>
#include <string>

namespace qhecke {

/// Thrown when an argument violates an operation's precondition. The message
/// names the violated constraint; the CLI maps it to exit status 2.
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& constraint)
      : std::invalid_argument(constraint) {}
};

/// Thrown when a numerical routine cannot reach its tolerance within budget
/// (CLI exit status 3).
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

inline void require(bool ok, const char* constraint) {
  if (!ok) throw domain_error(constraint);
}

inline void require(bool ok, const std::string& constraint) {
  if (!ok) throw domain_error(constraint);
}

}  // namespace qhecke
