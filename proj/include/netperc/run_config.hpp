#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace netperc::cli {

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parsed and schema-checked JSON config for one subcommand. Every key must
/// be known to the command and carry the right type; command-line flags
/// override these values.
class RunConfig {
  public:
    /// Throws ValidationError for malformed JSON, unknown keys or bad types.
    static RunConfig parse(const std::string& command, const std::string& json_text);
    static RunConfig empty(const std::string& command);

    bool has(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    long long integer(const std::string& key, long long fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    bool flag(const std::string& key, bool fallback) const;
    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

const std::vector<std::string>& known_commands();

}  // namespace netperc::cli
