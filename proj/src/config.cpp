#include <charconv>
#include <fstream>
#include <sstream>

#include "degmatch/harness.hpp"

namespace degmatch {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
bool parse_integer(const std::string& text, T& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_bool(const std::string& text, bool& out) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    out = true;
    return true;
  }
  if (text == "false" || text == "0" || text == "no" || text == "off") {
    out = false;
    return true;
  }
  return false;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// Reads "key = value" lines, calling handle(key, value, line_no).
template <class Handle>
void read_key_values(std::istream& in, const std::string& source, Handle handle) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source, line_no, "expected 'key = value', got '" + line + "'");
    }
    handle(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
  }
}

bool parse_real(const std::string& text, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == text.size();
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + text +
                              "' (expected csv or json)");
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  read_key_values(in, source, [&](const std::string& key, const std::string& value,
                                  std::size_t line_no) {
    auto bad_value = [&](const char* expected) {
      return ParseError(source, line_no,
                        "key '" + key + "' needs " + expected + ", got '" + value + "'");
    };
    if (key.starts_with("generator.")) {
      const std::string param = key.substr(10);
      if (param.empty()) throw ParseError(source, line_no, "empty generator parameter name");
      cfg.generator_params[param] = value;
    } else if (key == "generator") {
      cfg.generator = value;
    } else if (key == "predictor") {
      cfg.predictor = value;
    } else if (key == "algorithms") {
      cfg.algorithms = split_list(value);
    } else if (key == "trials") {
      if (!parse_integer(value, cfg.trials)) throw bad_value("an unsigned integer");
    } else if (key == "seed") {
      if (!parse_integer(value, cfg.seed)) throw bad_value("an unsigned 64-bit integer");
    } else if (key == "threads") {
      if (!parse_integer(value, cfg.threads)) throw bad_value("an unsigned integer");
    } else if (key == "shuffle") {
      if (!parse_bool(value, cfg.shuffle)) throw bad_value("true or false");
    } else if (key == "relabel") {
      if (!parse_bool(value, cfg.relabel)) throw bad_value("true or false");
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "format") {
      if (value == "csv") {
        cfg.format = OutputFormat::csv;
      } else if (value == "json") {
        cfg.format = OutputFormat::json;
      } else {
        throw bad_value("csv or json");
      }
    } else {
      throw ParseError(source, line_no, "unknown key '" + key + "'");
    }
  });
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_config(in, path.string());
}

AnalysisConfig parse_analysis_config(std::istream& in, const std::string& source) {
  AnalysisConfig cfg;
  read_key_values(in, source, [&](const std::string& key, const std::string& value,
                                  std::size_t line_no) {
    auto bad_value = [&](const char* expected) {
      return ParseError(source, line_no,
                        "key '" + key + "' needs " + expected + ", got '" + value + "'");
    };
    auto reals = [&] {
      std::vector<double> out;
      for (const auto& item : split_list(value)) {
        double x = 0.0;
        if (!parse_real(item, x)) throw bad_value("a comma-separated list of numbers");
        out.push_back(x);
      }
      return out;
    };
    if (key == "grid") {
      if (value != "table1" && value != "zipf") throw bad_value("table1 or zipf");
      cfg.grid = value;
    } else if (key == "alphas") {
      cfg.alphas = reals();
    } else if (key == "cutoffs") {
      cfg.cutoffs = reals();
    } else if (key == "sizes") {
      cfg.sizes.clear();
      for (const auto& item : split_list(value)) {
        std::size_t n = 0;
        if (!parse_integer(item, n)) throw bad_value("a comma-separated list of sizes");
        cfg.sizes.push_back(n);
      }
    } else if (key == "c_ratio") {
      if (!parse_real(value, cfg.c_ratio)) throw bad_value("a number");
    } else if (key == "threads") {
      if (!parse_integer(value, cfg.threads)) throw bad_value("an unsigned integer");
    } else {
      throw ParseError(source, line_no, "unknown key '" + key + "'");
    }
  });
  return cfg;
}

AnalysisConfig load_analysis_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_analysis_config(in, path.string());
}

void write_config(std::ostream& out, const ExperimentConfig& cfg) {
  out << "generator = " << cfg.generator << '\n';
  for (const auto& [key, value] : cfg.generator_params) {
    out << "generator." << key << " = " << value << '\n';
  }
  out << "predictor = " << cfg.predictor << '\n';
  out << "algorithms = ";
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
    out << (i ? ", " : "") << cfg.algorithms[i];
  }
  out << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "shuffle = " << (cfg.shuffle ? "true" : "false") << '\n';
  out << "relabel = " << (cfg.relabel ? "true" : "false") << '\n';
  if (!cfg.output.empty()) out << "output = " << cfg.output << '\n';
  out << "format = " << (cfg.format == OutputFormat::csv ? "csv" : "json") << '\n';
  out << "threads = " << cfg.threads << '\n';
}

}  // namespace degmatch
