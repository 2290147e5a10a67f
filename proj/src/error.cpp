#include "gauntlet/error.hpp"

namespace gauntlet {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptySentence: return "EmptySentence";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kRaggedReferences: return "RaggedReferences";
    case ErrorCode::kEmbeddingDim: return "EmbeddingDimError";
    case ErrorCode::kFractionUnreachable: return "FractionUnreachable";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace gauntlet
