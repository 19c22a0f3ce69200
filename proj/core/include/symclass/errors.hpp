#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace symclass {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SYMCLASS_DECLARE_ERROR(Name)          \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    }

SYMCLASS_DECLARE_ERROR(SingularPoint);
SYMCLASS_DECLARE_ERROR(OutOfDomain);
SYMCLASS_DECLARE_ERROR(OutOfChart);
SYMCLASS_DECLARE_ERROR(UnsupportedOmega);
SYMCLASS_DECLARE_ERROR(OdeSolveFailure);
SYMCLASS_DECLARE_ERROR(CaseInapplicable);
SYMCLASS_DECLARE_ERROR(QuadratureFailure);
SYMCLASS_DECLARE_ERROR(NonInvertible);
SYMCLASS_DECLARE_ERROR(NegativeOmega);
SYMCLASS_DECLARE_ERROR(SingularityReached);
SYMCLASS_DECLARE_ERROR(StepFailure);
SYMCLASS_DECLARE_ERROR(FlowEscape);
SYMCLASS_DECLARE_ERROR(InvalidArgument);

#undef SYMCLASS_DECLARE_ERROR

// Problem-file syntax error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// Carries every violation found, not only the first one.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

}  // namespace symclass
