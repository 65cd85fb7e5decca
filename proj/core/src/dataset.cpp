#include "tomt/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "scene_json.hpp"
#include "text_util.hpp"
#include "tomt/errors.hpp"
#include "tomt/interpreter.hpp"

namespace tomt {

using nlohmann::json;

namespace detail {
std::string_view bundled_fixtures_jsonl();
}

std::string_view to_string(QuestionType type) {
  switch (type) {
    case QuestionType::ShortRel: return "Short Rel";
    case QuestionType::LongRel: return "Long Rel";
    case QuestionType::Sum: return "Sum";
    case QuestionType::Compare: return "Compare";
    case QuestionType::Logic: return "Logic";
    case QuestionType::QueryPart: return "Query Part";
    case QuestionType::Exist: return "Exist";
    case QuestionType::Count: return "Count";
    case QuestionType::Analogy: return "Analogy";
  }
  return "Unknown";
}

std::string_view to_string(Structure structure) {
  switch (structure) {
    case Structure::Sequence: return "Sequence";
    case Structure::Parallel: return "Parallel";
    case Structure::Backtrack: return "Backtrack";
    case Structure::MultiBacktrack: return "Multi-Backtrack";
  }
  return "Unknown";
}

QuestionType question_type_from_string(std::string_view text) {
  const std::string wanted = detail::to_lower(detail::trim(text));
  for (QuestionType type : kQuestionTypes) {
    if (detail::to_lower(to_string(type)) == wanted) return type;
  }
  if (wanted == "logic both") return QuestionType::Logic;
  throw TaxonomyError("unknown question type '" + std::string(text) + "'");
}

Structure structure_from_string(std::string_view text) {
  const std::string wanted = detail::to_lower(detail::trim(text));
  for (Structure s : {Structure::Sequence, Structure::Parallel, Structure::Backtrack, Structure::MultiBacktrack}) {
    if (detail::to_lower(to_string(s)) == wanted) return s;
  }
  throw TaxonomyError("unknown structure '" + std::string(text) + "'");
}

Structure structure_of(QuestionType type) {
  switch (type) {
    case QuestionType::ShortRel:
    case QuestionType::LongRel: return Structure::Sequence;
    case QuestionType::Sum:
    case QuestionType::Compare:
    case QuestionType::Logic: return Structure::Parallel;
    case QuestionType::QueryPart:
    case QuestionType::Exist:
    case QuestionType::Count: return Structure::Backtrack;
    case QuestionType::Analogy: return Structure::MultiBacktrack;
  }
  return Structure::Sequence;
}

bool answers_match(std::string_view produced, std::string_view gold) {
  return detail::to_lower(detail::trim(produced)) == detail::to_lower(detail::trim(gold));
}

int hop_of(const QuestionRecord& record) {
  if (!record.gold_plan) throw MissingGoldPlan("record '" + record.id + "' has no gold plan");
  return static_cast<int>(record.gold_plan->size());
}

namespace {

std::string string_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string()) {
    throw SchemaError(std::string("record lacks string field '") + key + "'");
  }
  return doc[key].get<std::string>();
}

std::string answer_field(const json& doc) {
  if (!doc.contains("answer")) throw SchemaError("record lacks field 'answer'");
  const json& answer = doc["answer"];
  if (answer.is_string()) return answer.get<std::string>();
  if (answer.is_boolean()) return answer.get<bool>() ? "yes" : "no";
  if (answer.is_number_integer()) return std::to_string(answer.get<long long>());
  throw SchemaError("record field 'answer' must be a string, integer or boolean");
}

QuestionRecord record_from_json(const json& doc, std::string* split) {
  if (!doc.is_object()) throw SchemaError("record must be a JSON object");
  QuestionRecord record;
  record.id = string_field(doc, "id");
  record.question = string_field(doc, "question");
  record.answer = answer_field(doc);
  record.type = question_type_from_string(string_field(doc, "question_type"));
  record.structure = structure_from_string(string_field(doc, "structure"));
  if (record.structure != structure_of(record.type)) {
    throw TaxonomyError("record '" + record.id + "': " + std::string(to_string(record.type)) + " belongs to " +
                        std::string(to_string(structure_of(record.type))) + ", not " +
                        std::string(to_string(record.structure)));
  }
  if (!doc.contains("scene")) throw SchemaError("record '" + record.id + "' lacks a scene");
  record.scene = std::make_shared<const SceneGraph>(detail::scene_from_json(doc["scene"]));

  if (doc.contains("gold_plan") && !doc["gold_plan"].is_null()) {
    if (!doc["gold_plan"].is_array()) throw SchemaError("record '" + record.id + "': gold_plan must be a list");
    Plan plan;
    std::size_t line = 0;
    for (const auto& step : doc["gold_plan"]) {
      ++line;
      if (!step.is_string()) throw SchemaError("record '" + record.id + "': gold_plan entries must be strings");
      try {
        plan.steps.push_back(parse_step(step.get<std::string>(), line));
      } catch (const ParseError& e) {
        throw SchemaError("record '" + record.id + "' gold_plan: " + e.what());
      }
    }
    const ExecutionOutcome outcome = run_plan(plan, *record.scene);
    if (outcome.failure) {
      throw GoldPlanMismatch("record '" + record.id + "': gold plan fails: " + outcome.failure->what());
    }
    if (!outcome.trace.answer) throw GoldPlanMismatch("record '" + record.id + "': gold plan never assigns ans");
    std::string produced;
    try {
      produced = format_answer(*outcome.trace.answer);
    } catch (const RuntimeFailure& e) {
      throw GoldPlanMismatch("record '" + record.id + "': " + e.what());
    }
    if (!answers_match(produced, record.answer)) {
      throw GoldPlanMismatch("record '" + record.id + "': gold plan answers '" + produced + "', record says '" +
                             record.answer + "'");
    }
    record.hops = static_cast<int>(plan.size());
    record.gold_plan = std::move(plan);
  }

  if (split) {
    *split = doc.contains("split") ? doc["split"].get<std::string>() : "test";
    if (*split != "test" && *split != "library") {
      throw SchemaError("record '" + record.id + "': split must be 'test' or 'library'");
    }
  }
  return record;
}

json parse_json_line(std::string_view line) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

QuestionRecord parse_record(std::string_view line) { return record_from_json(parse_json_line(line), nullptr); }

DatasetSplit parse_dataset(std::string_view jsonl) {
  DatasetSplit out;
  std::set<std::string> ids;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (detail::trim(line).empty()) continue;
    std::string split;
    QuestionRecord record;
    try {
      record = record_from_json(parse_json_line(line), &split);
    } catch (const TaxonomyError& e) {
      throw TaxonomyError("line " + std::to_string(number) + ": " + e.what());
    } catch (const GoldPlanMismatch& e) {
      throw GoldPlanMismatch("line " + std::to_string(number) + ": " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError("line " + std::to_string(number) + ": " + e.what());
    } catch (const ConsistencyError& e) {
      throw ConsistencyError("line " + std::to_string(number) + ": " + e.what());
    }
    if (!ids.insert(record.id).second) {
      throw SchemaError("line " + std::to_string(number) + ": duplicate record id '" + record.id + "'");
    }
    (split == "library" ? out.library : out.test).push_back(std::move(record));
  }
  return out;
}

DatasetSplit load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open dataset " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dataset(buffer.str());
}

std::string record_to_json(const QuestionRecord& record, std::string_view split) {
  json doc = {{"id", record.id},
              {"question", record.question},
              {"answer", record.answer},
              {"question_type", std::string(to_string(record.type))},
              {"structure", std::string(to_string(record.structure))}};
  if (record.gold_plan) {
    json steps = json::array();
    for (const auto& step : record.gold_plan->steps) steps.push_back(render_step(step));
    doc["gold_plan"] = steps;
  }
  if (record.scene) doc["scene"] = detail::scene_to_json(*record.scene);
  if (split != "test") doc["split"] = std::string(split);
  return doc.dump();
}

std::string dataset_to_jsonl(const DatasetSplit& split) {
  std::string out;
  for (const auto& record : split.library) out += record_to_json(record, "library") + "\n";
  for (const auto& record : split.test) out += record_to_json(record) + "\n";
  return out;
}

const DatasetSplit& bundled_fixtures() {
  static const DatasetSplit kFixtures = parse_dataset(detail::bundled_fixtures_jsonl());
  return kFixtures;
}

std::vector<Example> example_library(const DatasetSplit& split, QuestionType type) {
  std::vector<Example> out;
  for (const auto& record : split.library) {
    if (record.type == type && record.gold_plan) out.push_back(Example{record.question, *record.gold_plan});
  }
  return out;
}

}  // namespace tomt
