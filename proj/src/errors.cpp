#include "gvlab/errors.hpp"

namespace gvlab {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::UnsupportedSize: return "UnsupportedSize";
        case ErrorCode::ZeroInverse: return "ZeroInverse";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TrivialCode: return "TrivialCode";
        case ErrorCode::SizeGuard: return "SizeGuard";
        case ErrorCode::OddVariations: return "OddVariations";
        case ErrorCode::NoValidDecomposition: return "NoValidDecomposition";
        case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
        case ErrorCode::UnsupportedField: return "UnsupportedField";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace gvlab
