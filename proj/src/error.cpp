#include "dercent/error.hpp"

namespace dercent {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::CharDividesM: return "CharDividesM";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NoPrimitiveRoot: return "NoPrimitiveRoot";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::SingularElement: return "SingularElement";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotPerfect: return "NotPerfect";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::WrongPeriod: return "WrongPeriod";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NoUnitFound: return "NoUnitFound";
    case ErrorKind::NotUnitResidue: return "NotUnitResidue";
    case ErrorKind::PsiNotIso: return "PsiNotIso";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::ReportFail: return "ReportFail";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_hypothesis_failure(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::CharDividesM:
    case ErrorKind::NoPrimitiveRoot:
    case ErrorKind::NotUnital:
    case ErrorKind::NotCommutative:
    case ErrorKind::NotAssociative:
    case ErrorKind::NotPerfect:
    case ErrorKind::NotAutomorphism:
    case ErrorKind::WrongPeriod:
    case ErrorKind::NotInvariant:
    case ErrorKind::NoUnitFound:
    case ErrorKind::NotUnitResidue:
    case ErrorKind::PsiNotIso:
    case ErrorKind::NotInDomain:
    case ErrorKind::NotClosed:
    case ErrorKind::SingularElement:
    case ErrorKind::FieldMismatch:
        return true;
    default:
        return false;
    }
}

} // namespace dercent
