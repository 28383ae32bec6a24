#pragma once

#include <stdexcept>
#include <string>

namespace ngcorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidCutoff : public Error { public: using Error::Error; };
class BadModeIndex : public Error { public: using Error::Error; };
class DimMismatch : public Error { public: using Error::Error; };
class ConvergenceFailure : public Error { public: using Error::Error; };
class TruncationError : public Error { public: using Error::Error; };
class BadSpec : public Error { public: using Error::Error; };
class BadEta : public Error { public: using Error::Error; };
class UnphysicalCM : public Error { public: using Error::Error; };
class MeanMismatch : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class CaseNotApplicable : public Error { public: using Error::Error; };
class ZeroWeight : public Error { public: using Error::Error; };
class InvalidState : public Error { public: using Error::Error; };

}  // namespace ngcorr
