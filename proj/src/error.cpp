#include "soliton/error.hpp"

namespace soliton {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateJet: return "DegenerateJet";
    case ErrorKind::JetFailure: return "JetFailure";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::NeckDegenerate: return "NeckDegenerate";
    case ErrorKind::LightlikeGradient: return "LightlikeGradient";
    case ErrorKind::UnknownSpace: return "UnknownSpace";
    case ErrorKind::NoRawData: return "NoRawData";
    case ErrorKind::UnsupportedLift: return "UnsupportedLift";
    case ErrorKind::GlueMismatch: return "GlueMismatch";
    case ErrorKind::InversionFailure: return "InversionFailure";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::TooFewNodes: return "TooFewNodes";
    case ErrorKind::DegenerateW: return "DegenerateW";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::DegenerateStart: return "DegenerateStart";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Error";
}

}  // namespace soliton
