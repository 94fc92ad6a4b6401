#pragma once

#include <stdexcept>
#include <string>

namespace fbm {

// Argument errors are reported as std::invalid_argument; the types below
// cover numerical failures that callers may want to tell apart.

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The circulant embedding has an eigenvalue below the clipping threshold.
class EmbeddingError : public NumericalError {
public:
    EmbeddingError(const std::string& what, double min_eigenvalue)
        : NumericalError(what), min_eigenvalue_(min_eigenvalue) {}

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// Dense Cholesky factorization of the covariance matrix broke down.
class OracleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A size guard refused the request (e.g. O(N^2) Clark above its limit).
class SizeGuardError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace fbm
