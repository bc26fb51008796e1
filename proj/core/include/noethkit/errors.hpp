#pragma once

#include <stdexcept>
#include <string>

namespace noethkit {

// Input that fails to parse or violates an operation precondition.
// Reported by the CLI as exit code 2.
class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error in a polynomial expression; keeps the offset into the text.
class parse_error : public usage_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : usage_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A point failed the integrability test at the requested bracket depth.
// Reported by the CLI as exit code 3.
class not_integrable_error : public std::runtime_error {
public:
    explicit not_integrable_error(const std::string& what) : std::runtime_error(what) {}
};

// An oracle could not reach a stable answer (truncation not stabilized,
// numeric counts disagree, branch data outside the rational field, ...).
// Reported by the CLI as exit code 4.
class inconclusive_error : public std::runtime_error {
public:
    explicit inconclusive_error(const std::string& what) : std::runtime_error(what) {}
};

// A constructed polynomial exceeded the degree budget promised by the
// bound formulas. Indicates a defect, never expected on valid input.
// Reported by the CLI as exit code 5.
class ledger_error : public std::logic_error {
public:
    explicit ledger_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace noethkit
