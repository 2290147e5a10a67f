#pragma once

#include <stdexcept>
#include <string>

namespace gauntlet {

enum class ErrorCode {
  kEmptySentence,
  kEmptyCorpus,
  kRaggedReferences,
  kEmbeddingDim,
  kFractionUnreachable,
  kInvalidInput,
  kIo,
};

const char* error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command line front end can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gauntlet
