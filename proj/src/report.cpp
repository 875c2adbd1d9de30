#include <cstdio>
#include <fstream>
#include <sstream>

#include "degmatch/harness.hpp"
#include "json.hpp"

namespace degmatch {
namespace {

std::string quote_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line,
                                        const std::string& source,
                                        std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw ParseError(source, line_no, "unterminated quoted cell");
  cells.push_back(std::move(cell));
  return cells;
}

const char* format_name(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "json";
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  throw std::out_of_range("no column named '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out << (k ? "," : "") << quote_cell(row[k]);
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line, source, line_no);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(table.header.size()) +
                           " cells, got " + std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw ParseError(source, line_no, "missing header row");
  return table;
}

std::string table_json(const CsvTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t k = 0; k < row.size() && k < table.header.size(); ++k) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(row[k], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == row[k].size() && used > 0) {
        obj[table.header[k]] = x;
      } else {
        obj[table.header[k]] = row[k];
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2);
}

CsvTable summary_table(const ExperimentResult& result) {
  CsvTable table;
  table.header = {"algorithm",  "trials",         "mean_ratio",
                  "std_ratio",  "mean_size",      "mean_max_matching",
                  "mean_hall_bound", "mean_predictor_error"};
  const auto& s = result.summary;
  for (const auto& alg : s.algorithms) {
    table.rows.push_back({alg.algorithm, std::to_string(s.trials),
                          format_double(alg.mean_ratio), format_double(alg.std_ratio),
                          format_double(alg.mean_size),
                          format_double(s.mean_max_matching),
                          format_double(s.mean_hall_bound),
                          format_double(s.mean_predictor_error)});
  }
  return table;
}

CsvTable trials_table(const ExperimentResult& result) {
  CsvTable table;
  table.header = {"trial", "max_matching", "hall_bound", "predictor_error"};
  for (const auto& name : result.config.algorithms) {
    table.header.push_back("size_" + name);
    table.header.push_back("ratio_" + name);
  }
  for (const auto& t : result.trials) {
    std::vector<std::string> row = {std::to_string(t.trial_index),
                                    std::to_string(t.max_matching),
                                    std::to_string(t.hall_bound),
                                    format_double(t.predictor_error)};
    for (std::size_t a = 0; a < t.sizes.size(); ++a) {
      row.push_back(std::to_string(t.sizes[a]));
      row.push_back(format_double(t.ratios[a]));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string experiment_json(const ExperimentResult& result) {
  using nlohmann::json;
  const auto& cfg = result.config;
  json config = {
      {"generator", cfg.generator},
      {"generator_params", cfg.generator_params},
      {"predictor", cfg.predictor},
      {"algorithms", cfg.algorithms},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
      {"shuffle", cfg.shuffle},
      {"relabel", cfg.relabel},
      {"format", format_name(cfg.format)},
  };
  json algorithms = json::array();
  for (const auto& alg : result.summary.algorithms) {
    algorithms.push_back({{"algorithm", alg.algorithm},
                          {"mean_ratio", alg.mean_ratio},
                          {"std_ratio", alg.std_ratio},
                          {"mean_size", alg.mean_size}});
  }
  const auto& s = result.summary;
  json summary = {{"trials", s.trials},
                  {"degenerate_trials", s.degenerate_trials},
                  {"mean_max_matching", s.mean_max_matching},
                  {"mean_hall_bound", s.mean_hall_bound},
                  {"mean_predictor_error", s.mean_predictor_error},
                  {"algorithms", algorithms},
                  {"warnings", s.warnings}};
  json trials = json::array();
  for (const auto& t : result.trials) {
    json sizes = json::object(), ratios = json::object();
    for (std::size_t a = 0; a < t.sizes.size(); ++a) {
      sizes[cfg.algorithms[a]] = t.sizes[a];
      ratios[cfg.algorithms[a]] = t.ratios[a];
    }
    trials.push_back({{"trial", t.trial_index},
                      {"max_matching", t.max_matching},
                      {"hall_bound", t.hall_bound},
                      {"predictor_error", t.predictor_error},
                      {"degenerate", t.degenerate},
                      {"wall_seconds", t.wall_seconds},
                      {"sizes", sizes},
                      {"ratios", ratios}});
  }
  return json{{"config", config}, {"summary", summary}, {"trials", trials}}.dump(2);
}

void save_experiment(const ExperimentResult& result) {
  const std::filesystem::path path = result.config.output;
  if (path.empty()) throw std::invalid_argument("no output path configured");
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
  };
  if (result.config.format == OutputFormat::json) {
    auto out = open(path);
    out << experiment_json(result) << '\n';
    return;
  }
  {
    auto out = open(path);
    write_csv(out, summary_table(result));
  }
  auto trials_path = path;
  trials_path.replace_filename(path.stem().string() + ".trials.csv");
  auto out = open(trials_path);
  write_csv(out, trials_table(result));
}

CsvTable snapshot_table(const std::vector<SnapshotSummary>& summaries) {
  CsvTable table;
  table.header = {"snapshot", "n_offline", "m_online", "predictor_error"};
  if (!summaries.empty()) {
    for (const auto& alg : summaries.front().algorithms) {
      table.header.push_back("mean_ratio_" + alg.algorithm);
      table.header.push_back("std_ratio_" + alg.algorithm);
    }
  }
  for (const auto& s : summaries) {
    std::vector<std::string> row = {s.path, std::to_string(s.n_offline),
                                    std::to_string(s.m_online),
                                    format_double(s.predictor_error)};
    for (const auto& alg : s.algorithms) {
      row.push_back(format_double(alg.mean_ratio));
      row.push_back(format_double(alg.std_ratio));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace degmatch
