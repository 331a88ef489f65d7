#include "magnoise/io.hpp"

#include <cctype>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "magnoise/units.hpp"

namespace magnoise {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string message(const std::string& source, int line, const std::string& key,
                    const std::string& msg) {
  std::ostringstream os;
  os << source << ":" << line;
  if (!key.empty()) os << ": key '" << key << "'";
  os << ": " << msg;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& key,
                         const std::string& msg)
    : DomainError(message(source, line, key, msg)), line_(line), key_(key) {}

std::vector<ConfigEntry> parse_config(const std::string& text, const std::string& source) {
  std::vector<ConfigEntry> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line, "", "expected 'key = value'");
    ConfigEntry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError(source, line, "", "empty key");
    if (e.value.empty()) throw ConfigError(source, line, e.key, "empty value");
    if (!seen.insert(e.key).second) throw ConfigError(source, line, e.key, "duplicate key");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ConfigEntry> load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, 0, "", "cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
  os << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool first = true;
    for (double v : rows[r]) {
      os << (first ? "" : ",") << format_number(v);
      first = false;
    }
    if (r < text_rows.size())
      for (const auto& s : text_rows[r]) {
        os << (first ? "" : ",") << csv_field(s);
        first = false;
      }
    os << "\n";
  }
}

std::optional<double> ReportValue::ratio() const {
  if (!paper_value || *paper_value == 0.0) return std::nullopt;
  return computed / *paper_value;
}

const ReportValue& ScenarioReport::output(const std::string& name) const {
  for (const auto& o : outputs)
    if (o.name == name) return o;
  throw DomainError("report has no output '" + name + "'");
}

void ScenarioReport::write_csv(std::ostream& os) const {
  os << "quantity,unit,computed,paper_value,ratio,note\n";
  for (const auto& o : outputs) {
    os << csv_field(o.name) << "," << csv_field(o.unit) << "," << format_number(o.computed) << ",";
    if (o.paper_value) os << format_number(*o.paper_value);
    os << ",";
    if (auto r = o.ratio()) os << format_number(*r);
    os << "," << csv_field(o.note) << "\n";
  }
}

std::string ScenarioReport::to_json(int indent) const {
  json j;
  j["scenario"] = scenario;
  json in = json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = in;
  json outs = json::array();
  for (const auto& o : outputs) {
    json e;
    e["quantity"] = o.name;
    e["unit"] = o.unit;
    e["computed"] = o.computed;
    e["paper_value"] = o.paper_value ? json(*o.paper_value) : json(nullptr);
    const auto r = o.ratio();
    e["ratio"] = r ? json(*r) : json(nullptr);
    if (!o.note.empty()) e["note"] = o.note;
    outs.push_back(e);
  }
  j["outputs"] = outs;
  j["notes"] = notes;
  if (!sweep.columns.empty()) {
    json s;
    s["columns"] = sweep.columns;
    s["rows"] = sweep.rows;
    j["sweep"] = s;
  }
  return j.dump(indent);
}

std::string ScenarioReport::inputs_as_config() const {
  std::ostringstream os;
  os << "# " << scenario << "\n";
  for (const auto& [k, v] : inputs) os << k << " = " << v << "\n";
  return os.str();
}

std::string bath_to_json(const DiscreteBath& bath, int indent) {
  json modes = json::array();
  for (const auto& o : bath.modes)
    modes.push_back({{"omega", o.omega}, {"beta", o.beta}, {"n", {o.n_hat.x(), o.n_hat.y(), o.n_hat.z()}}});
  return json{{"modes", modes}}.dump(indent);
}

DiscreteBath bath_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("bath JSON: ") + e.what());
  }
  if (!j.contains("modes") || !j["modes"].is_array())
    throw DomainError("bath JSON: expected an object with a 'modes' array");
  DiscreteBath bath;
  for (const auto& m : j["modes"]) {
    try {
      Oscillator o;
      o.omega = m.at("omega").get<double>();
      o.beta = m.at("beta").get<double>();
      if (m.contains("n")) {
        const auto& n = m["n"];
        if (!n.is_array() || n.size() != 3) throw DomainError("bath JSON: 'n' must have 3 entries");
        o.n_hat = Vec3(n[0].get<double>(), n[1].get<double>(), n[2].get<double>());
      }
      bath.add(o);
    } catch (const json::exception& e) {
      throw DomainError(std::string("bath JSON: ") + e.what());
    }
  }
  return bath;
}

}  // namespace magnoise
