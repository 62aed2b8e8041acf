#ifndef TRUNCTAIL_ERRORS_HPP
#define TRUNCTAIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trunctail {

// Sample generation kept zero pairs (possible for tiny N).
class EmptySampleError : public std::runtime_error {
public:
    explicit EmptySampleError(const std::string& what) : std::runtime_error(what) {}
};

// Tied X values; the estimators assume continuous distributions.
class TieError : public std::runtime_error {
public:
    explicit TieError(const std::string& what) : std::runtime_error(what) {}
};

// |M^(2) - 2(M^(1))^2| below the relative floor; Q/S statistics undefined.
class DegenerateDenominatorError : public std::runtime_error {
public:
    explicit DegenerateDenominatorError(const std::string& what) : std::runtime_error(what) {}
};

// Requested S value has no preimage under s_alpha on (-inf, 0).
class NotAdmissibleError : public std::domain_error {
public:
    NotAdmissibleError(const std::string& what, double s_value)
        : std::domain_error(what), s_value_(s_value) {}
    double s_value() const noexcept { return s_value_; }

private:
    double s_value_;
};

// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_tol)
        : std::runtime_error(what), achieved_tol_(achieved_tol) {}
    double achieved_tolerance() const noexcept { return achieved_tol_; }

private:
    double achieved_tol_;
};

// CSV parse failure carrying the 1-based offending row.
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, std::size_t row)
        : std::runtime_error(what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

} // namespace trunctail

#endif
