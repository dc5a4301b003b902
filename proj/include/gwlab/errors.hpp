#pragma once

#include <stdexcept>
#include <string>

namespace gwlab {

enum class Errc {
  DivisionByZero,
  TowerMismatch,
  ZeroArgument,
  NoTopStep,
  HeightLimit,
  NotPrime,
  NotSquare,
  DegenerateForm,
  NotSymmetric,
  NotTorsion,
  NotAUnit,
  NotInFiltration,
  NotInF2,
  ExtractionMismatch,
  ArityMismatch,
  IndexOutOfRange,
  OddDegree,
  BadTraceForm,
  SyntaxError,
  UnknownField,
  FactorLimit,
  SearchLimit,
  Undecidable,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace gwlab
