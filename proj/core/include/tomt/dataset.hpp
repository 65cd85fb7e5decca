#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tomt/generator.hpp"
#include "tomt/plan_dsl.hpp"
#include "tomt/scene_graph.hpp"

namespace tomt {

enum class QuestionType { ShortRel, LongRel, Sum, Compare, Logic, QueryPart, Exist, Count, Analogy };
enum class Structure { Sequence, Parallel, Backtrack, MultiBacktrack };

inline constexpr std::array<QuestionType, 9> kQuestionTypes = {
    QuestionType::ShortRel, QuestionType::LongRel,   QuestionType::Sum,
    QuestionType::Compare,  QuestionType::Logic,     QuestionType::QueryPart,
    QuestionType::Exist,    QuestionType::Count,     QuestionType::Analogy};

std::string_view to_string(QuestionType type);
std::string_view to_string(Structure structure);
QuestionType question_type_from_string(std::string_view text);  // throws TaxonomyError
Structure structure_from_string(std::string_view text);         // throws TaxonomyError
Structure structure_of(QuestionType type);

struct QuestionRecord {
  std::string id;
  std::string question;
  std::string answer;
  QuestionType type = QuestionType::ShortRel;
  Structure structure = Structure::Sequence;
  int hops = 0;  // gold plan length, 0 without a gold plan
  std::optional<Plan> gold_plan;
  std::shared_ptr<const SceneGraph> scene;
};

struct DatasetSplit {
  std::vector<QuestionRecord> library;  // few-shot examples
  std::vector<QuestionRecord> test;
};

/// One record per line: {id, question, answer, question_type, structure,
/// gold_plan: [step strings], scene: {relationships, objects}, split?}.
/// Throws SchemaError, TaxonomyError or GoldPlanMismatch.
DatasetSplit parse_dataset(std::string_view jsonl);
DatasetSplit load_dataset(const std::filesystem::path& path);
QuestionRecord parse_record(std::string_view line);

std::string record_to_json(const QuestionRecord& record, std::string_view split = "test");
std::string dataset_to_jsonl(const DatasetSplit& split);

/// Gold-plan step count. Throws MissingGoldPlan.
int hop_of(const QuestionRecord& record);

/// Case-insensitive comparison of a formatted answer with a gold answer.
bool answers_match(std::string_view produced, std::string_view gold);

/// Hand-built records shipped with the library (every question type).
const DatasetSplit& bundled_fixtures();

/// Library records of one type, as prompt examples.
std::vector<Example> example_library(const DatasetSplit& split, QuestionType type);

/// Chain questions over random attribute-style scenes; hops cycle through
/// [min_hop, max_hop]. Answers come from executing the generated plan.
struct SyntheticOptions {
  int count = 100;
  int min_hop = 2;
  int max_hop = 10;
  int objects = 8;
  std::uint64_t seed = 0;
};

std::vector<QuestionRecord> synthetic_questions(const SyntheticOptions& options);
QuestionRecord synthetic_question(int hops, std::uint64_t seed, std::string id, int objects = 8);

}  // namespace tomt
