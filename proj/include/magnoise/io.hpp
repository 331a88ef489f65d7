#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magnoise/bath.hpp"
#include "magnoise/core.hpp"

namespace magnoise {

class ConfigError : public DomainError {
 public:
  ConfigError(const std::string& source, int line, const std::string& key, const std::string& msg);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct ConfigEntry {
  std::string key, value;
  int line = 0;
};

// Flat "key = value" text, '#' starts a comment, blank lines ignored.
// Duplicate keys are an error.
std::vector<ConfigEntry> parse_config(const std::string& text, const std::string& source = "<config>");
std::vector<ConfigEntry> load_config(const std::string& path);

// Tabular data with a header row; numbers are written in shortest round-trip form.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<std::string>> text_rows;  // optional text columns, appended

  void write_csv(std::ostream& os) const;
};

struct ReportValue {
  std::string name;
  double computed = 0;
  std::string unit;
  std::optional<double> paper_value;
  std::string note;

  std::optional<double> ratio() const;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> inputs;  // key, text as given
  std::vector<ReportValue> outputs;
  std::vector<std::string> notes;
  Table sweep;

  const ReportValue& output(const std::string& name) const;
  // columns quantity,unit,computed,paper_value,ratio,note
  void write_csv(std::ostream& os) const;
  std::string to_json(int indent = 2) const;
  // "key = value" lines that parse back to the same inputs
  std::string inputs_as_config() const;
};

std::string bath_to_json(const DiscreteBath& bath, int indent = 2);
DiscreteBath bath_from_json(const std::string& text);

}  // namespace magnoise
