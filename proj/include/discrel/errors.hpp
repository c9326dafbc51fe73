#pragma once

#include <stdexcept>
#include <string>

namespace discrel {

/// Bad arguments: out-of-range states, mismatched domains, unknown points.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed bit tables, relation files or polynomial text.
class FormatError : public std::runtime_error {
  public:
    explicit FormatError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    /// 1-based source line, 0 when not tied to a file.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Requested operation exists but not for these parameters (e.g. non-prime modulus).
class UnsupportedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument broke a documented precondition of the calculus
/// (e.g. a "consequence" whose extension does not contain the relation).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace discrel
