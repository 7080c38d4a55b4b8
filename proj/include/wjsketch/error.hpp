#pragma once

#include <stdexcept>
#include <string>

namespace wjs {

enum class Errc {
  NegativeWeight,
  NonFiniteWeight,
  DuplicateFeature,
  MalformedLine,
  NonMonotonicIndex,
  EmptyDataset,
  ZeroSize,
  EmptySet,
  EmptyPool,
  BothEmpty,
  SchemeMismatch,
  LengthMismatch,
  PoolMismatch,
  SeedMismatch,
  WrongScheme,
  InvalidBits,
  KappaTooLarge,
  ListTooShort,
  IoError,
  FormatError,
  InvalidArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::NonFiniteWeight: return "NonFiniteWeight";
    case Errc::DuplicateFeature: return "DuplicateFeature";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::NonMonotonicIndex: return "NonMonotonicIndex";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::ZeroSize: return "ZeroSize";
    case Errc::EmptySet: return "EmptySet";
    case Errc::EmptyPool: return "EmptyPool";
    case Errc::BothEmpty: return "BothEmpty";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::PoolMismatch: return "PoolMismatch";
    case Errc::SeedMismatch: return "SeedMismatch";
    case Errc::WrongScheme: return "WrongScheme";
    case Errc::InvalidBits: return "InvalidBits";
    case Errc::KappaTooLarge: return "KappaTooLarge";
    case Errc::ListTooShort: return "ListTooShort";
    case Errc::IoError: return "IoError";
    case Errc::FormatError: return "FormatError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace wjs
