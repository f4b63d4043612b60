#pragma once

#include <stdexcept>
#include <string>

namespace qsplab {

// Exit-code categories used by the CLI.
enum class ErrorKind { invalid_config = 2, budget_exceeded = 3, numerical_quality = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(ErrorKind::invalid_config, msg) {}
};

struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error(ErrorKind::budget_exceeded, msg) {}
};

// Cutoff inadequacy, quadrature non-convergence, precision shortfall, etc.
struct NumericsError : Error {
    explicit NumericsError(const std::string& msg) : Error(ErrorKind::numerical_quality, msg) {}
};

}  // namespace qsplab
