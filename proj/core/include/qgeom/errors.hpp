#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgeom {

/// Bad input: shape mismatch, non-Hermitian matrix, out-of-range parameter.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The ground state of H(x) is (near-)degenerate, so |x> is not defined.
class DegenerateStateError : public NumericError {
public:
    DegenerateStateError(const std::string& what, double gap)
        : NumericError(what), gap_(gap) {}
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

class FitError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The near-zero Laplacian eigenspace is not spanned by commuting projectors.
class NonProjectorError : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateOnSphereError : public NumericError {
public:
    DegenerateOnSphereError(const std::string& what, double min_gap)
        : NumericError(what), min_gap_(min_gap) {}
    double min_gap() const noexcept { return min_gap_; }

private:
    double min_gap_;
};

class GridTooCoarseError : public NumericError {
public:
    GridTooCoarseError(const std::string& what, double residual)
        : NumericError(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed input file. Row and column are 1-based; 0 means "not applicable".
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t row = 0, std::size_t col = 0)
        : ValidationError(what), row_(row), col_(col) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

}  // namespace qgeom
