#include "symclass/errors.hpp"

namespace symclass {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
    std::string out = "validation failed:";
    for (const auto& s : v) {
        out += "\n  - ";
        out += s;
    }
    return out;
}

}  // namespace

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace symclass
