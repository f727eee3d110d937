#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dercent {

enum class ErrorKind {
    CharDividesM,
    NotPrime,
    NoPrimitiveRoot,
    DivisionByZero,
    FieldMismatch,
    ParseError,
    DimensionMismatch,
    NotClosed,
    SingularElement,
    NotUnital,
    NotCommutative,
    NotAssociative,
    NotPerfect,
    NotAutomorphism,
    WrongPeriod,
    NotInvariant,
    NoUnitFound,
    NotUnitResidue,
    PsiNotIso,
    NotInDomain,
    ReportFail,
    SizeLimit,
    Internal,
};

std::string_view to_string(ErrorKind kind);

/// True for the kinds that signal a violated mathematical hypothesis
/// (as opposed to malformed input or an internal fault).
bool is_hypothesis_failure(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures carry the byte offset where the grammar broke.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(ErrorKind::ParseError, what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace dercent
