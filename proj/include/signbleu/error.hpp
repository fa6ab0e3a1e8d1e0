#pragma once

#include <stdexcept>
#include <string>

namespace signbleu {

enum class ErrorCode {
  InvalidConfig,
  UnmappedTier,
  ChannelCollision,
  UnknownChannel,
  NoManualChannels,
  GrammarError,
  MalformedXml,
  MissingTimeValue,
  DanglingSlotRef,
  SchemaError,
  EmptyCorpus,
  CorpusTooSmall,
  DegenerateInput,
  AllOrdersEmpty,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception. `detail` carries a machine-readable location
/// (JSON path, token index, tier name) when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string detail = {})
      : std::runtime_error(format(code, message, detail)),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            const std::string& detail) {
    std::string out = error_code_name(code);
    out += ": ";
    out += message;
    if (!detail.empty()) {
      out += " [";
      out += detail;
      out += "]";
    }
    return out;
  }

  ErrorCode code_;
  std::string detail_;
};

}  // namespace signbleu
