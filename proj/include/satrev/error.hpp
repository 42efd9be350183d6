#pragma once

#include <stdexcept>
#include <string>

namespace satrev {

// Failure categories, aligned with the CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind { Usage = 1, Parse = 2, Semantic = 3 };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

  static Error parse(const std::string& msg, int line = 0, int col = 0) {
    if (line > 0)
      return Error(Kind::Parse, "parse error at " + std::to_string(line) + ":" +
                                    std::to_string(col) + ": " + msg);
    return Error(Kind::Parse, "parse error: " + msg);
  }
  static Error semantic(const std::string& msg) { return Error(Kind::Semantic, msg); }
  static Error usage(const std::string& msg) { return Error(Kind::Usage, msg); }

 private:
  Kind kind_;
};

}  // namespace satrev
