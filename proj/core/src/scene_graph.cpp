#include "tomt/scene_graph.hpp"

#include <algorithm>
#include <cctype>

#include "scene_json.hpp"
#include "text_util.hpp"
#include "tomt/errors.hpp"

namespace tomt {

using nlohmann::json;

std::string_view to_string(SceneStyle style) {
  return style == SceneStyle::PartBased ? "PartBased" : "AttributeBased";
}

std::string category_of(std::string_view name) {
  while (!name.empty() && std::isdigit(static_cast<unsigned char>(name.back()))) {
    name.remove_suffix(1);
  }
  return detail::to_lower(name);
}

RelationTable::RelationTable(const std::map<std::string, Rows>& rows) : rows_(rows.begin(), rows.end()) {}

bool RelationTable::contains(std::string_view relation) const { return rows_.find(relation) != rows_.end(); }

const RelationTable::Rows& RelationTable::rows(std::string_view relation) const {
  auto it = rows_.find(relation);
  if (it == rows_.end()) {
    throw RuntimeFailure(FailureKind::UnknownRelation, "relation '" + std::string(relation) + "' is not in the scene");
  }
  return it->second;
}

std::vector<std::string> RelationTable::names() const {
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto& [name, _] : rows_) out.push_back(name);
  return out;
}

VocabularyIndex build_vocabulary(const std::vector<SceneObject>& objects) {
  VocabularyIndex vocab;
  for (const auto& object : objects) {
    vocab.categories.insert(object.category);
    for (const auto& [part, info] : object.parts) {
      vocab.parts.insert(part);
      vocab.colors.insert(info.color);
      vocab.max_part_count = std::max(vocab.max_part_count, info.count);
    }
    if (object.attributes) {
      vocab.colors.insert(object.attributes->color);
      vocab.sizes.insert(object.attributes->size);
      vocab.materials.insert(object.attributes->material);
    }
  }
  return vocab;
}

namespace {

SceneStyle infer_style(const std::vector<SceneObject>& objects) {
  if (objects.empty()) throw SchemaError("scene has no objects");
  const bool part_based = std::all_of(objects.begin(), objects.end(), [](const SceneObject& o) {
    return !o.parts.empty() && !o.attributes;
  });
  const bool attribute_based = std::all_of(objects.begin(), objects.end(), [](const SceneObject& o) {
    return o.parts.empty() && o.attributes;
  });
  if (part_based) return SceneStyle::PartBased;
  if (attribute_based) return SceneStyle::AttributeBased;
  throw SchemaError("scene mixes part-based and attribute-based objects");
}

void validate_objects(const std::vector<SceneObject>& objects) {
  for (const auto& object : objects) {
    if (object.category.empty()) throw SchemaError("object '" + object.name + "' has an empty category");
    for (const auto& [part, info] : object.parts) {
      if (part.empty() || info.color.empty()) throw SchemaError("object '" + object.name + "' has an empty part entry");
      if (info.count < 1) throw SchemaError("object '" + object.name + "' part '" + part + "' has count < 1");
    }
    if (object.attributes &&
        (object.attributes->color.empty() || object.attributes->size.empty() || object.attributes->material.empty())) {
      throw SchemaError("object '" + object.name + "' has an empty attribute slot");
    }
  }
}

bool contains_index(const ObjectSet& row, ObjectIndex index) {
  return std::binary_search(row.begin(), row.end(), index);
}

void validate_relations(const std::map<std::string, RelationTable::Rows, std::less<>>& table, std::size_t n) {
  for (const auto& [name, rows] : table) {
    if (rows.size() != n) {
      throw ConsistencyError("relation '" + name + "' has " + std::to_string(rows.size()) + " rows for " +
                             std::to_string(n) + " objects");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (ObjectIndex j : rows[i]) {
        if (j >= n) {
          throw ConsistencyError("relation '" + name + "' row " + std::to_string(i) + " references object " +
                                 std::to_string(j) + " out of range");
        }
        if (j == i) {
          throw ConsistencyError("relation '" + name + "' is reflexive at object " + std::to_string(i));
        }
      }
    }
  }
  for (const auto& [a, b] : kOpposedRelations) {
    auto ia = table.find(a);
    auto ib = table.find(b);
    if (ia == table.end() || ib == table.end()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (contains_index(ia->second[i], j) != contains_index(ib->second[j], i)) {
          throw ConsistencyError("duality violated: " + std::to_string(j) + " in " + std::string(a) + "[" +
                                 std::to_string(i) + "] but " + std::to_string(i) + " in " + std::string(b) + "[" +
                                 std::to_string(j) + "] disagrees");
        }
      }
    }
  }
}

}  // namespace

SceneGraph::SceneGraph(std::vector<SceneObject> objects, RelationTable relations)
    : objects_(std::move(objects)), relations_(std::move(relations)) {
  validate_objects(objects_);
  style_ = infer_style(objects_);
  validate_relations(relations_.rows_, objects_.size());
  vocabulary_ = build_vocabulary(objects_);
}

const SceneObject& SceneGraph::object(ObjectIndex index) const { return objects_.at(index); }

ObjectSet SceneGraph::all_objects() const {
  ObjectSet out(objects_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

ObjectSet objects_in_relation(const SceneGraph& scene, std::string_view relation, ObjectIndex anchor) {
  const auto& rows = scene.relations().rows(relation);
  return rows.at(anchor);
}

namespace detail {

namespace {

SceneObject object_from_json(const json& entry) {
  if (!entry.is_object() || entry.size() != 1) {
    throw SchemaError("each object entry must be a single-key map");
  }
  SceneObject object;
  object.name = entry.begin().key();
  object.category = category_of(object.name);
  const json& body = entry.begin().value();
  if (body.is_object()) {
    for (const auto& [part, info] : body.items()) {
      if (!info.is_array() || info.size() != 2 || !info[0].is_string() || !info[1].is_number_integer()) {
        throw SchemaError("part '" + part + "' of '" + object.name + "' must be [color, count]");
      }
      object.parts[to_lower(part)] = Part{to_lower(info[0].get<std::string>()), info[1].get<int>()};
    }
  } else if (body.is_array()) {
    if (body.size() != 3 || !body[0].is_string() || !body[1].is_string() || !body[2].is_string()) {
      throw SchemaError("attributes of '" + object.name + "' must be [color, size, material]");
    }
    object.attributes = Attributes{to_lower(body[0].get<std::string>()), to_lower(body[1].get<std::string>()),
                                   to_lower(body[2].get<std::string>())};
  } else {
    throw SchemaError("object '" + object.name + "' must map to a part map or an attribute triple");
  }
  return object;
}

RelationTable::Rows rows_from_json(const std::string& name, const json& body) {
  if (!body.is_array()) throw SchemaError("relation '" + name + "' must be a list of lists");
  RelationTable::Rows rows;
  rows.reserve(body.size());
  for (const auto& row : body) {
    if (!row.is_array()) throw SchemaError("relation '" + name + "' must be a list of lists");
    ObjectSet set;
    for (const auto& index : row) {
      if (!index.is_number_integer()) throw SchemaError("relation '" + name + "' holds a non-integer index");
      if (index.get<long long>() < 0) throw ConsistencyError("relation '" + name + "' holds a negative index");
      set.push_back(index.get<ObjectIndex>());
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    rows.push_back(std::move(set));
  }
  return rows;
}

}  // namespace

SceneGraph scene_from_json(const json& document) {
  if (!document.is_object()) throw SchemaError("scene document must be a JSON object");
  if (!document.contains("objects") || !document["objects"].is_array()) {
    throw SchemaError("scene document lacks an 'objects' list");
  }
  if (!document.contains("relationships") || !document["relationships"].is_object()) {
    throw SchemaError("scene document lacks a 'relationships' map");
  }
  std::vector<SceneObject> objects;
  for (const auto& entry : document["objects"]) objects.push_back(object_from_json(entry));

  std::map<std::string, RelationTable::Rows> rows;
  for (const auto& [name, body] : document["relationships"].items()) {
    rows[to_lower(name)] = rows_from_json(name, body);
  }
  return SceneGraph(std::move(objects), RelationTable(rows));
}

json scene_to_json(const SceneGraph& scene) {
  json relationships = json::object();
  for (const auto& [name, rows] : scene.relations().all()) relationships[name] = rows;
  json objects = json::array();
  for (const auto& object : scene.objects()) {
    json body;
    if (object.attributes) {
      body = json::array({object.attributes->color, object.attributes->size, object.attributes->material});
    } else {
      body = json::object();
      for (const auto& [part, info] : object.parts) body[part] = json::array({info.color, info.count});
    }
    objects.push_back(json{{object.name, body}});
  }
  return json{{"relationships", relationships}, {"objects", objects}};
}

}  // namespace detail

SceneGraph load_scene(std::string_view document) {
  json parsed;
  try {
    parsed = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("scene document is not valid JSON: ") + e.what());
  }
  return detail::scene_from_json(parsed);
}

}  // namespace tomt
