#ifndef GVLAB_ERRORS_HPP
#define GVLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gvlab {

enum class ErrorCode {
    NonPrimeCharacteristic,
    ReducibleModulus,
    UnsupportedSize,
    ZeroInverse,
    LengthMismatch,
    TrivialCode,
    SizeGuard,
    OddVariations,
    NoValidDecomposition,
    ZeroConstantTerm,
    UnsupportedField,
    DomainError,
    ParseError,
    Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace gvlab

#endif
