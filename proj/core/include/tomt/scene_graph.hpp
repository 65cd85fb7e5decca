#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tomt {

using ObjectIndex = std::size_t;

/// Ascending, duplicate-free list of object indices.
using ObjectSet = std::vector<ObjectIndex>;

enum class SceneStyle { PartBased, AttributeBased };

std::string_view to_string(SceneStyle style);

struct Part {
  std::string color;
  int count = 1;

  bool operator==(const Part&) const = default;
};

struct Attributes {
  std::string color;
  std::string size;
  std::string material;

  bool operator==(const Attributes&) const = default;
};

struct SceneObject {
  std::string name;
  std::string category;
  std::map<std::string, Part> parts;     // PartBased scenes only
  std::optional<Attributes> attributes;  // AttributeBased scenes only

  bool operator==(const SceneObject&) const = default;
};

/// j in rows(r)[i] reads "object j is r-of object i".
class RelationTable {
 public:
  using Rows = std::vector<ObjectSet>;

  RelationTable() = default;
  explicit RelationTable(const std::map<std::string, Rows>& rows);

  bool contains(std::string_view relation) const;
  const Rows& rows(std::string_view relation) const;  // throws RuntimeFailure(UnknownRelation)
  std::vector<std::string> names() const;
  const std::map<std::string, Rows, std::less<>>& all() const { return rows_; }

  bool operator==(const RelationTable&) const = default;

 private:
  std::map<std::string, Rows, std::less<>> rows_;

  friend class SceneGraph;
};

struct VocabularyIndex {
  std::set<std::string> parts;
  std::set<std::string> colors;
  std::set<std::string> categories;
  std::set<std::string> sizes;
  std::set<std::string> materials;
  int max_part_count = 0;

  bool operator==(const VocabularyIndex&) const = default;
};

VocabularyIndex build_vocabulary(const std::vector<SceneObject>& objects);

/// Immutable, validated scene. Construct through load_scene().
class SceneGraph {
 public:
  SceneGraph(std::vector<SceneObject> objects, RelationTable relations);

  const std::vector<SceneObject>& objects() const noexcept { return objects_; }
  const SceneObject& object(ObjectIndex index) const;
  std::size_t size() const noexcept { return objects_.size(); }
  const RelationTable& relations() const noexcept { return relations_; }
  SceneStyle style() const noexcept { return style_; }
  const VocabularyIndex& vocabulary() const noexcept { return vocabulary_; }

  ObjectSet all_objects() const;

  bool operator==(const SceneGraph&) const = default;

 private:
  std::vector<SceneObject> objects_;
  RelationTable relations_;
  SceneStyle style_;
  VocabularyIndex vocabulary_;
};

/// Parses and validates a scene document ("relationships" + "objects").
/// Throws SchemaError or ConsistencyError.
SceneGraph load_scene(std::string_view document);

/// "Chair0" -> "chair": trailing digits removed, lowercased.
std::string category_of(std::string_view name);

/// Returns rows(relation)[anchor]; throws RuntimeFailure(UnknownRelation) for
/// a relation absent from the scene and std::out_of_range for a bad anchor.
ObjectSet objects_in_relation(const SceneGraph& scene, std::string_view relation,
                              ObjectIndex anchor);

/// Pairs whose rows must mirror each other when both are present.
inline constexpr std::pair<std::string_view, std::string_view> kOpposedRelations[] = {
    {"left", "right"}, {"front", "behind"}, {"above", "below"}};

}  // namespace tomt
