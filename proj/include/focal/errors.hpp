#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace focal {

enum class ErrorKind {
  ZeroInverse,
  DegeneratePivot,
  DuplicateAbscissa,
  CharTooSmall,
  RankDeficientSample,
  InconsistentDim,
  DegenerateSurface,
  SingularSamplePoint,
  FiberVerificationFailed,
  NotDegenerate,
  ChartFailed,
  NonVanishingTransversalComponent,
  ProfileDisagreement,
  ExtractionFailed,
  ContainmentFailed,
  ParseError,
  ArityError,
  IoError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::DegeneratePivot: return "DegeneratePivot";
    case ErrorKind::DuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorKind::CharTooSmall: return "CharTooSmall";
    case ErrorKind::RankDeficientSample: return "RankDeficientSample";
    case ErrorKind::InconsistentDim: return "InconsistentDim";
    case ErrorKind::DegenerateSurface: return "DegenerateSurface";
    case ErrorKind::SingularSamplePoint: return "SingularSamplePoint";
    case ErrorKind::FiberVerificationFailed: return "FiberVerificationFailed";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
    case ErrorKind::ChartFailed: return "ChartFailed";
    case ErrorKind::NonVanishingTransversalComponent: return "NonVanishingTransversalComponent";
    case ErrorKind::ProfileDisagreement: return "ProfileDisagreement";
    case ErrorKind::ExtractionFailed: return "ExtractionFailed";
    case ErrorKind::ContainmentFailed: return "ContainmentFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Degeneracy errors mean "the random sample was not general enough";
/// callers resample a bounded number of times before giving up.
inline bool is_degeneracy(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegeneratePivot:
    case ErrorKind::RankDeficientSample:
    case ErrorKind::DegenerateSurface:
    case ErrorKind::SingularSamplePoint:
    case ErrorKind::FiberVerificationFailed:
    case ErrorKind::ChartFailed:
    case ErrorKind::NonVanishingTransversalComponent:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace focal
