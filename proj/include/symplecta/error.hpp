#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace symplecta {

enum class ErrorKind {
  dimension,      // mismatched or malformed sizes
  contract,       // input violates a structural precondition (not symplectic, not symmetric)
  definiteness,   // matrix required to be positive definite is not
  degeneracy,     // flat or unbounded convex body
  domain,         // mathematically meaningful input outside the operation's domain
  convergence,    // iterative solver did not reach its stopping criterion
  insufficient_grid,
  internal,       // two routes that must agree did not
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library. Carries a kind, optional named numeric
// details (e.g. the smallest eigenvalue, lambda_max) and an optional witness
// direction.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::pair<std::string, double>> details = {},
        Eigen::VectorXd witness = {})
      : std::runtime_error(message),
        kind_(kind),
        details_(std::move(details)),
        witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<std::pair<std::string, double>>& details() const { return details_; }
  const Eigen::VectorXd& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::pair<std::string, double>> details_;
  Eigen::VectorXd witness_;
};

}  // namespace symplecta
