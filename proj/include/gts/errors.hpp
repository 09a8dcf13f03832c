#pragma once

#include <stdexcept>
#include <string>

namespace gts {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DomainExceeded : public Error { using Error::Error; };
class InvalidSeed    : public Error { using Error::Error; };
class BranchDomain   : public Error { using Error::Error; };
class QuadratureFail : public Error { using Error::Error; };
class NoReturn       : public Error { using Error::Error; };
class GammaOutOfRange: public Error { using Error::Error; };
class NotMonotone    : public Error { using Error::Error; };
class MeanNotZero    : public Error { using Error::Error; };
class MeanMismatch   : public Error { using Error::Error; };
class ResonantMode   : public Error { using Error::Error; };
class DegenerateK    : public Error { using Error::Error; };
class StepFail       : public Error { using Error::Error; };
class NotConverged   : public Error { using Error::Error; };
class NewtonFail     : public Error { using Error::Error; };

}  // namespace gts
