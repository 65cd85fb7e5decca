#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tomt/errors.hpp"
#include "tomt/harness.hpp"

namespace tomt {

using nlohmann::json;

ReportFormat report_format_from_string(std::string_view text) {
  if (text == "table") return ReportFormat::Table;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw ConfigError("unknown report format '" + std::string(text) + "' (table, csv, json)");
}

namespace {

std::string fixed(double value, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string fixed(const std::optional<double>& value, const char* missing, int decimals = 2) {
  return value ? fixed(*value, decimals) : missing;
}

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

std::string rpad_line(std::string line) {
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line + "\n";
}

double per_repeat(int count, int repeats) { return repeats > 0 ? static_cast<double>(count) / repeats : 0.0; }

std::string type_label(const std::optional<QuestionType>& type) {
  return type ? std::string(to_string(*type)) : "All";
}

std::vector<QuestionType> types_in(const Report& report) {
  std::vector<QuestionType> out;
  for (QuestionType type : kQuestionTypes) {
    for (const auto& cell : report.cells) {
      if (cell.type == type) {
        out.push_back(type);
        break;
      }
    }
  }
  return out;
}

std::string render_table(const Report& report) {
  std::size_t col = 16;
  for (const auto& c : report.configs) col = std::max(col, c.label().size() + 2);

  std::string out;
  std::string header = pad("Structure", 17) + pad("Type", 12) + pad("Hop", 7);
  for (const auto& c : report.configs) header += pad(c.label(), col);
  out += rpad_line(header);
  const auto types = types_in(report);
  if (types.empty()) return out;

  for (QuestionType type : types) {
    double hop = 0;
    for (const auto& cell : report.cells) {
      if (cell.type == type) {
        hop = cell.mean_hop;
        break;
      }
    }
    std::string line = pad(std::string(to_string(structure_of(type))), 17) + pad(std::string(to_string(type)), 12) +
                       pad(fixed(hop), 7);
    for (std::size_t c = 0; c < report.configs.size(); ++c) {
      const Cell* cell = report.cell(type, c);
      line += pad(cell ? fixed(cell->accuracy()) + " (" + fixed(cell->mean_steps()) + ")" : "-", col);
    }
    out += rpad_line(line);
  }

  out += "\nNoBack / backtracked / inconsistency, per repeat\n";
  std::string sub = pad("Type", 12);
  for (const auto& c : report.configs) sub += pad(c.label(), col + 4);
  out += rpad_line(sub);
  for (QuestionType type : types) {
    std::string line = pad(std::string(to_string(type)), 12);
    for (std::size_t c = 0; c < report.configs.size(); ++c) {
      const Cell* cell = report.cell(type, c);
      line += pad(cell ? fixed(per_repeat(cell->no_back, report.repeats)) + " / " +
                             fixed(per_repeat(cell->backtracked, report.repeats)) + " / " +
                             fixed(per_repeat(cell->inconsistency, report.repeats))
                       : "-",
                  col + 4);
    }
    out += rpad_line(line);
  }

  if (!report.rssi.empty()) {
    out += "\nRSSI\n";
    out += rpad_line(pad("Algorithm", col) + pad("Type", 12) + pad("ratio-of-means", 16) + "mean-of-ratios");
    for (const auto& e : report.rssi) {
      out += rpad_line(pad(report.configs[e.config_index].label(), col) + pad(type_label(e.type), 12) +
                       pad(fixed(e.ratio_of_means, "-", 4), 16) + fixed(e.mean_of_ratios, "-", 4));
    }
  }

  out += "\nPearson correlation with hop\n";
  out += rpad_line(pad("Algorithm", col) + pad("Accuracy", 10) + pad("Steps", 10) + "NoBack");
  for (const auto& e : report.correlations) {
    out += rpad_line(pad(report.configs[e.config_index].label(), col) + pad(fixed(e.accuracy, "-", 3), 10) +
                     pad(fixed(e.steps, "-", 3), 10) + fixed(e.no_back, "-", 3));
  }
  out += "\nGenerator: " + report.generator + "; repeats: " + std::to_string(report.repeats) +
         "; base seed: " + std::to_string(report.base_seed) + "; questions: " + std::to_string(report.questions) + "\n";
  return out;
}

constexpr const char* kCsvHeader =
    "structure,type,algorithm,runs,accuracy,mean_steps,mean_hop,no_back,backtracked,inconsistency";

std::string render_csv(const Report& report) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& cell : report.cells) {
    out += std::string(to_string(structure_of(cell.type))) + "," + std::string(to_string(cell.type)) + "," +
           report.configs[cell.config_index].label() + "," + std::to_string(cell.runs) + "," +
           fixed(cell.accuracy()) + "," + fixed(cell.mean_steps()) + "," + fixed(cell.mean_hop) + "," +
           fixed(per_repeat(cell.no_back, report.repeats)) + "," +
           fixed(per_repeat(cell.backtracked, report.repeats)) + "," +
           fixed(per_repeat(cell.inconsistency, report.repeats)) + "\n";
  }
  return out;
}

json optional_number(const std::optional<double>& value) { return value ? json(*value) : json(nullptr); }

std::optional<double> number_or_null(const json& value) {
  if (value.is_null()) return std::nullopt;
  return value.get<double>();
}

json config_json(const SearchConfig& c) {
  return {{"label", c.label()},        {"mode", std::string(to_string(c.mode))},
          {"branch", c.branch},        {"max_step", c.max_step},
          {"start_depth", c.start_depth}, {"block_size", c.block_size},
          {"stop_sign", c.stop_sign}};
}

std::string render_json(const Report& report) {
  json configs = json::array();
  for (const auto& c : report.configs) configs.push_back(config_json(c));
  json cells = json::array();
  for (const auto& cell : report.cells) {
    cells.push_back({{"type", std::string(to_string(cell.type))},
                     {"structure", std::string(to_string(structure_of(cell.type)))},
                     {"config", cell.config_index},
                     {"algorithm", report.configs[cell.config_index].label()},
                     {"runs", cell.runs},
                     {"correct", cell.correct},
                     {"success", cell.success},
                     {"no_back", cell.no_back},
                     {"no_back_correct", cell.no_back_correct},
                     {"backtracked", cell.backtracked},
                     {"inconsistency", cell.inconsistency},
                     {"total_steps", cell.total_steps},
                     {"mean_hop", cell.mean_hop},
                     {"accuracy", cell.accuracy()},
                     {"mean_steps", cell.mean_steps()}});
  }
  json rssi = json::array();
  for (const auto& e : report.rssi) {
    rssi.push_back({{"type", e.type ? json(std::string(to_string(*e.type))) : json(nullptr)},
                    {"config", e.config_index},
                    {"algorithm", report.configs[e.config_index].label()},
                    {"ratio_of_means", optional_number(e.ratio_of_means)},
                    {"mean_of_ratios", optional_number(e.mean_of_ratios)}});
  }
  json correlations = json::array();
  for (const auto& e : report.correlations) {
    correlations.push_back({{"config", e.config_index},
                            {"algorithm", report.configs[e.config_index].label()},
                            {"accuracy", optional_number(e.accuracy)},
                            {"steps", optional_number(e.steps)},
                            {"no_back", optional_number(e.no_back)}});
  }
  json doc = {{"meta",
               {{"generator", report.generator},
                {"repeats", report.repeats},
                {"base_seed", report.base_seed},
                {"questions", report.questions},
                {"configs", configs}}},
              {"cells", cells},
              {"rssi", rssi},
              {"correlations", correlations}};
  return doc.dump(2) + "\n";
}

}  // namespace

std::string render_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return render_table(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Json: return render_json(report);
  }
  return {};
}

Report report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    Report report;
    const json& meta = doc.at("meta");
    report.generator = meta.at("generator").get<std::string>();
    report.repeats = meta.at("repeats").get<int>();
    report.base_seed = meta.at("base_seed").get<std::uint64_t>();
    report.questions = meta.at("questions").get<int>();
    for (const auto& c : meta.at("configs")) {
      SearchConfig config;
      config.mode = search_mode_from_string(c.at("mode").get<std::string>());
      config.branch = c.at("branch").get<int>();
      config.max_step = c.at("max_step").get<int>();
      config.start_depth = c.at("start_depth").get<int>();
      config.block_size = c.at("block_size").get<int>();
      config.stop_sign = c.at("stop_sign").get<std::string>();
      report.configs.push_back(config);
    }
    auto config_index = [&](const json& e) {
      const auto index = e.at("config").get<std::size_t>();
      if (index >= report.configs.size()) throw SchemaError("report entry references config " + std::to_string(index));
      return index;
    };
    for (const auto& c : doc.at("cells")) {
      Cell cell;
      cell.type = question_type_from_string(c.at("type").get<std::string>());
      cell.config_index = config_index(c);
      cell.runs = c.at("runs").get<int>();
      cell.correct = c.at("correct").get<int>();
      cell.success = c.at("success").get<int>();
      cell.no_back = c.at("no_back").get<int>();
      cell.no_back_correct = c.at("no_back_correct").get<int>();
      cell.backtracked = c.at("backtracked").get<int>();
      cell.inconsistency = c.at("inconsistency").get<int>();
      cell.total_steps = c.at("total_steps").get<long>();
      cell.mean_hop = c.at("mean_hop").get<double>();
      report.cells.push_back(cell);
    }
    for (const auto& e : doc.at("rssi")) {
      RssiEntry entry;
      if (!e.at("type").is_null()) entry.type = question_type_from_string(e.at("type").get<std::string>());
      entry.config_index = config_index(e);
      entry.ratio_of_means = number_or_null(e.at("ratio_of_means"));
      entry.mean_of_ratios = number_or_null(e.at("mean_of_ratios"));
      report.rssi.push_back(entry);
    }
    for (const auto& e : doc.at("correlations")) {
      CorrelationEntry entry;
      entry.config_index = config_index(e);
      entry.accuracy = number_or_null(e.at("accuracy"));
      entry.steps = number_or_null(e.at("steps"));
      entry.no_back = number_or_null(e.at("no_back"));
      report.correlations.push_back(entry);
    }
    return report;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed report: ") + e.what());
  } catch (const ConfigError& e) {
    throw SchemaError(std::string("malformed report: ") + e.what());
  } catch (const TaxonomyError& e) {
    throw SchemaError(std::string("malformed report: ") + e.what());
  }
}

std::vector<CsvCell> parse_report_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw SchemaError("report CSV lacks the expected header");
  std::vector<CsvCell> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 10) throw SchemaError("report CSV row has " + std::to_string(fields.size()) + " fields");
    try {
      out.push_back(CsvCell{fields[0], fields[1], fields[2], std::stoi(fields[3]), std::stod(fields[4]),
                            std::stod(fields[5]), std::stod(fields[6]), std::stod(fields[7]), std::stod(fields[8]),
                            std::stod(fields[9])});
    } catch (const std::logic_error&) {
      throw SchemaError("report CSV row has a non-numeric field: " + line);
    }
  }
  return out;
}

}  // namespace tomt
