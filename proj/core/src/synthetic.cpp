#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "tomt/dataset.hpp"
#include "tomt/errors.hpp"
#include "tomt/interpreter.hpp"
#include "tomt/rng.hpp"
#include "tomt/tokens.hpp"

namespace tomt {

namespace {

const std::vector<std::string> kShapes = {"cube", "sphere", "cylinder"};
const std::vector<std::string> kRelations = {"left", "right", "front", "behind"};

std::vector<std::size_t> permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

// Random attribute-style scene with distinct (color, size, material, shape)
// per object and coordinate-derived relations.
SceneGraph random_scene(int count, Rng& rng) {
  std::set<std::vector<std::string>> used;
  std::vector<SceneObject> objects;
  std::map<std::string, int> shape_uses;
  while (static_cast<int>(objects.size()) < count) {
    std::vector<std::string> key = {color_tokens()[rng.below(color_tokens().size())],
                                    size_tokens()[rng.below(size_tokens().size())],
                                    material_tokens()[rng.below(material_tokens().size())],
                                    kShapes[rng.below(kShapes.size())]};
    if (!used.insert(key).second) continue;
    SceneObject object;
    const int n = shape_uses[key[3]]++;
    object.name = key[3] + (n == 0 ? "" : std::to_string(n));
    object.category = key[3];
    object.attributes = Attributes{key[0], key[1], key[2]};
    objects.push_back(std::move(object));
  }
  const auto x = permutation(objects.size(), rng);
  const auto depth = permutation(objects.size(), rng);
  std::map<std::string, RelationTable::Rows> rows;
  for (const auto& name : kRelations) rows[name].resize(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = 0; j < objects.size(); ++j) {
      if (i == j) continue;
      (x[j] < x[i] ? rows["left"] : rows["right"])[i].push_back(j);
      (depth[j] < depth[i] ? rows["front"] : rows["behind"])[i].push_back(j);
    }
  }
  return SceneGraph(std::move(objects), RelationTable(rows));
}

std::vector<std::string> tokens_of(const SceneObject& object) {
  return {object.attributes->color, object.attributes->size, object.attributes->material, object.category};
}

// Smallest token subset that singles out `target` within `pool`.
std::vector<std::string> unique_descriptor(const SceneGraph& scene, ObjectIndex target, const ObjectSet& pool,
                                           Rng& rng) {
  const auto tokens = tokens_of(scene.object(target));
  for (int width = 1; width <= 4; ++width) {
    std::vector<unsigned> masks;
    for (unsigned mask = 1; mask < 16; ++mask) {
      if (std::popcount(mask) == width) masks.push_back(mask);
    }
    for (std::size_t i = masks.size(); i > 1; --i) std::swap(masks[i - 1], masks[rng.below(i)]);
    for (unsigned mask : masks) {
      bool unique = true;
      for (ObjectIndex other : pool) {
        if (other == target) continue;
        const auto theirs = tokens_of(scene.object(other));
        bool same = true;
        for (int b = 0; b < 4; ++b) {
          if ((mask >> b & 1u) && theirs[b] != tokens[b]) same = false;
        }
        if (same) {
          unique = false;
          break;
        }
      }
      if (unique) {
        std::vector<std::string> out;
        for (int b = 0; b < 4; ++b) {
          if (mask >> b & 1u) out.push_back(tokens[b]);
        }
        return out;
      }
    }
  }
  return {};
}

ListLiteral descriptor_literal(const std::vector<std::string>& tokens) {
  ListLiteral list;
  for (const auto& t : tokens) list.items.emplace_back(StringLiteral{t});
  return list;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

std::string relation_phrase(const std::string& relation) {
  if (relation == "left") return "left of";
  if (relation == "right") return "right of";
  if (relation == "front") return "in front of";
  return "behind";
}

std::optional<QuestionRecord> try_build(int hops, Rng& rng, int objects, std::string id) {
  auto scene = std::make_shared<const SceneGraph>(random_scene(objects, rng));
  Plan plan;
  auto add = [&plan](std::string function, std::vector<Arg> args) {
    const int index = static_cast<int>(plan.steps.size()) + 1;
    plan.steps.push_back(PlanStep{index, "obj" + std::to_string(index), Call{std::move(function), std::move(args)}});
  };
  const auto var = [&plan]() { return VarRef{plan.steps.back().target}; };

  ObjectIndex current = rng.below(scene->size());
  ObjectSet current_set = {current};
  bool singleton = true;
  auto first = unique_descriptor(*scene, current, scene->all_objects(), rng);
  std::string phrase = "the " + join(first);
  add("filter_part", {descriptor_literal(first), VarRef{std::string(kAllObjects)}});

  for (int step = 2; step < hops; ++step) {
    if (singleton) {
      std::vector<std::string> relations = kRelations;
      for (std::size_t i = relations.size(); i > 1; --i) std::swap(relations[i - 1], relations[rng.below(i)]);
      std::string chosen;
      for (const auto& r : relations) {
        // Keep at least two objects when another filter follows, so the filter does real work.
        const auto& row = scene->relations().rows(r)[current];
        const std::size_t need = step + 1 < hops ? 2 : 1;
        if (row.size() >= need) {
          chosen = r;
          break;
        }
      }
      if (chosen.empty()) return std::nullopt;
      current_set = scene->relations().rows(chosen)[current];
      phrase = "the objects " + relation_phrase(chosen) + " " + phrase;
      add("query_relation", {StringLiteral{chosen}, var()});
      singleton = false;
    } else {
      current = current_set[rng.below(current_set.size())];
      auto descriptor = unique_descriptor(*scene, current, current_set, rng);
      phrase = "the " + join(descriptor) + " among " + phrase;
      add("filter_part", {descriptor_literal(descriptor), var()});
      current_set = {current};
      singleton = true;
    }
  }

  std::string question;
  if (singleton) {
    if (rng.bernoulli(0.5)) {
      add("query_color", {var()});
      question = "What color is " + phrase + "?";
    } else {
      add("query_size", {var()});
      question = "What size is " + phrase + "?";
    }
  } else if (rng.bernoulli(0.5)) {
    add("count_object", {var()});
    question = "How many objects are " + phrase.substr(std::string("the objects ").size()) + "?";
  } else {
    add("exist", {var()});
    question = "Is there anything " + phrase.substr(std::string("the objects ").size()) + "?";
  }
  plan.steps.back().target = std::string(kDefaultStopSign);

  const Trace trace = execute_plan(plan, *scene);
  QuestionRecord record;
  record.id = std::move(id);
  record.question = question;
  record.answer = format_answer(*trace.answer);
  record.type = hops <= 5 ? QuestionType::ShortRel : QuestionType::LongRel;
  record.structure = structure_of(record.type);
  record.hops = hops;
  record.gold_plan = std::move(plan);
  record.scene = std::move(scene);
  return record;
}

}  // namespace

QuestionRecord synthetic_question(int hops, std::uint64_t seed, std::string id, int objects) {
  if (hops < 1) throw ConfigError("synthetic questions need at least one hop");
  if (objects < 3) throw ConfigError("synthetic scenes need at least three objects");
  Rng rng(seed);
  // A single-step question is just the final query on all objects.
  if (hops == 1) {
    auto scene = std::make_shared<const SceneGraph>(random_scene(objects, rng));
    QuestionRecord record;
    record.id = std::move(id);
    record.question = "How many objects are there?";
    record.gold_plan = Plan{{PlanStep{1, std::string(kDefaultStopSign),
                                      Call{"count_object", {VarRef{std::string(kAllObjects)}}}}}};
    record.answer = std::to_string(objects);
    record.type = QuestionType::ShortRel;
    record.structure = Structure::Sequence;
    record.hops = 1;
    record.scene = std::move(scene);
    return record;
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    if (auto record = try_build(hops, rng, objects, id)) return *std::move(record);
  }
  throw ConfigError("could not build a " + std::to_string(hops) + "-hop synthetic question");
}

std::vector<QuestionRecord> synthetic_questions(const SyntheticOptions& options) {
  if (options.count < 0 || options.min_hop < 1 || options.max_hop < options.min_hop) {
    throw ConfigError("invalid synthetic question options");
  }
  std::vector<QuestionRecord> out;
  const int span = options.max_hop - options.min_hop + 1;
  for (int i = 0; i < options.count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "syn-%04d", i);
    out.push_back(synthetic_question(options.min_hop + i % span, mix_seed(options.seed, static_cast<std::uint64_t>(i)),
                                     id, options.objects));
  }
  return out;
}

}  // namespace tomt
