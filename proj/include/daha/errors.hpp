#pragma once

#include <stdexcept>
#include <string>

namespace daha {

enum class Err {
  BadEmbedding,
  BadPrime,
  Denominator,
  Domain,
  IncompleteSpectrum,
  IdealNotInvariant,
  ParamWindow,
  NonSemisimpleT,
  UnsupportedFamily,
  NoConjugator,
  NotInvariant,
  Precision,
  Internal,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::BadEmbedding: return "EBadEmbedding";
    case Err::BadPrime: return "EBadPrime";
    case Err::Denominator: return "EDenominator";
    case Err::Domain: return "EDomain";
    case Err::IncompleteSpectrum: return "EIncompleteSpectrum";
    case Err::IdealNotInvariant: return "EIdealNotInvariant";
    case Err::ParamWindow: return "EParamWindow";
    case Err::NonSemisimpleT: return "ENonSemisimpleT";
    case Err::UnsupportedFamily: return "EUnsupportedFamily";
    case Err::NoConjugator: return "ENoConjugator";
    case Err::NotInvariant: return "ENotInvariant";
    case Err::Precision: return "EPrecision";
    case Err::Internal: return "EInternal";
  }
  return "EUnknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }
  // True for errors a caller can provoke with bad-but-well-formed inputs
  // (vanishing denominators, out-of-window parameters, ...), as opposed to
  // internal invariant violations.
  bool expected() const { return code_ != Err::Internal; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
  if (!cond) fail(code, what);
}

// Internal logic check; failing one of these is a bug, not a user error.
inline void check(bool cond, const std::string& what) {
  if (!cond) fail(Err::Internal, what);
}

}  // namespace daha
