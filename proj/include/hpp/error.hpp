// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hpp {

enum class Errc {
  // matroid
  ExchangeAxiomViolation,
  EmptyBases,
  SizeMismatch,
  ZeroMatrix,
  EmptyGroundSet,
  NotACircuitHyperplane,
  NotAFlat,
  // poly
  DimensionMismatch,
  NotMultiaffine,
  EqualIndices,
  EmptyFace,
  DegreeOverflow,
  // realroot
  ZeroPolynomial,
  // sos
  NotRepresentable,
  IterationLimit,
  RationalizationFailed,
  NotFound,
  // catalog / io
  UnknownName,
  ParseError,
  ValidationError,
  // pipeline
  PreconditionUnverifiable,
  NumericFailure,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ExchangeAxiomViolation: return "ExchangeAxiomViolation";
    case Errc::EmptyBases: return "EmptyBases";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::ZeroMatrix: return "ZeroMatrix";
    case Errc::EmptyGroundSet: return "EmptyGroundSet";
    case Errc::NotACircuitHyperplane: return "NotACircuitHyperplane";
    case Errc::NotAFlat: return "NotAFlat";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotMultiaffine: return "NotMultiaffine";
    case Errc::EqualIndices: return "EqualIndices";
    case Errc::EmptyFace: return "EmptyFace";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::IterationLimit: return "IterationLimit";
    case Errc::RationalizationFailed: return "RationalizationFailed";
    case Errc::NotFound: return "NotFound";
    case Errc::UnknownName: return "UnknownName";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::PreconditionUnverifiable: return "PreconditionUnverifiable";
    case Errc::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hpp
