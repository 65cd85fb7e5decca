#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tomt/errors.hpp"
#include "tomt/scene_graph.hpp"

using namespace tomt;

namespace {

const char* kTwoChairs = R"({
  "relationships": {"left": [[1], []], "right": [[], [0]]},
  "objects": [{"Chair0": {"leg": ["Gray", 4]}}, {"Chair1": {"seat": ["red", 1]}}]})";

}  // namespace

TEST(SceneGraph, LoadsWorkedPtrScene) {
  const SceneGraph scene = load_scene(data_file("ptr_scene.json"));
  EXPECT_EQ(scene.size(), 3u);
  EXPECT_EQ(scene.style(), SceneStyle::PartBased);
  EXPECT_EQ(scene.object(0).category, "chair");
  EXPECT_EQ(scene.object(1).category, "table");
  EXPECT_EQ(scene.object(2).parts.at("arm vertical bar"), (Part{"brown", 4}));
  EXPECT_EQ(scene.relations().rows("front")[0], (ObjectSet{1, 2}));
  EXPECT_EQ(scene.vocabulary().max_part_count, 4);
  EXPECT_TRUE(scene.vocabulary().parts.count("leg bar"));
  EXPECT_TRUE(scene.vocabulary().categories.count("table"));
}

TEST(SceneGraph, LoadsWorkedClevrScene) {
  const SceneGraph scene = load_scene(data_file("clevr_scene.json"));
  EXPECT_EQ(scene.size(), 8u);
  EXPECT_EQ(scene.style(), SceneStyle::AttributeBased);
  EXPECT_EQ(scene.object(3).category, "cylinder");
  EXPECT_EQ(scene.object(3).attributes->color, "brown");
  EXPECT_EQ(scene.all_objects().size(), 8u);
  EXPECT_EQ(scene.vocabulary().sizes, (std::set<std::string>{"large", "small"}));
}

TEST(SceneGraph, LowercasesColors) {
  const SceneGraph scene = load_scene(kTwoChairs);
  EXPECT_EQ(scene.object(0).parts.at("leg").color, "gray");
}

TEST(SceneGraph, CategoryStripsDigits) {
  EXPECT_EQ(category_of("Chair0"), "chair");
  EXPECT_EQ(category_of("refrigerator12"), "refrigerator");
  EXPECT_EQ(category_of("cube"), "cube");
}

TEST(SceneGraph, RejectsBrokenDuality) {
  const char* doc = R"({"relationships": {"left": [[1], []], "right": [[], []]},
    "objects": [{"Chair0": {"leg": ["gray", 4]}}, {"Chair1": {"seat": ["red", 1]}}]})";
  EXPECT_THROW(load_scene(doc), ConsistencyError);
}

TEST(SceneGraph, RejectsReflexiveRelation) {
  const char* doc = R"({"relationships": {"front": [[0], []]},
    "objects": [{"Chair0": {"leg": ["gray", 4]}}, {"Chair1": {"seat": ["red", 1]}}]})";
  EXPECT_THROW(load_scene(doc), ConsistencyError);
}

TEST(SceneGraph, RejectsOutOfRangeIndex) {
  const char* doc = R"({"relationships": {"front": [[5], []]},
    "objects": [{"Chair0": {"leg": ["gray", 4]}}, {"Chair1": {"seat": ["red", 1]}}]})";
  EXPECT_THROW(load_scene(doc), ConsistencyError);
}

TEST(SceneGraph, RejectsRowCountMismatch) {
  const char* doc = R"({"relationships": {"front": [[]]},
    "objects": [{"Chair0": {"leg": ["gray", 4]}}, {"Chair1": {"seat": ["red", 1]}}]})";
  EXPECT_THROW(load_scene(doc), ConsistencyError);
}

TEST(SceneGraph, RejectsMixedStyles) {
  const char* doc = R"({"relationships": {},
    "objects": [{"Chair0": {"leg": ["gray", 4]}}, {"cube0": ["red", "large", "metal"]}]})";
  EXPECT_THROW(load_scene(doc), SchemaError);
}

TEST(SceneGraph, RejectsMalformedDocuments) {
  EXPECT_THROW(load_scene("not json"), SchemaError);
  EXPECT_THROW(load_scene(R"({"objects": []})"), SchemaError);
  EXPECT_THROW(load_scene(R"({"relationships": {}, "objects": []})"), SchemaError);
  EXPECT_THROW(load_scene(R"({"relationships": {}, "objects": [{"Chair0": {"leg": ["gray", 0]}}]})"), SchemaError);
  EXPECT_THROW(load_scene(R"({"relationships": {}, "objects": [{"cube0": ["red", "large"]}]})"), SchemaError);
}

TEST(SceneGraph, UnknownRelationIsRuntimeFailure) {
  const SceneGraph scene = load_scene(kTwoChairs);
  try {
    (void)scene.relations().rows("above");
    FAIL() << "expected RuntimeFailure";
  } catch (const RuntimeFailure& e) {
    EXPECT_EQ(e.kind(), FailureKind::UnknownRelation);
  }
  EXPECT_EQ(objects_in_relation(scene, "left", 0), (ObjectSet{1}));
}

// Every opposed pair in every bundled or worked-example scene mirrors exactly.
TEST(SceneGraph, DualityHoldsOnWorkedScenes) {
  for (const char* file : {"ptr_scene.json", "clevr_scene.json"}) {
    const SceneGraph scene = load_scene(data_file(file));
    for (const auto& [a, b] : kOpposedRelations) {
      if (!scene.relations().contains(a) || !scene.relations().contains(b)) continue;
      for (ObjectIndex i = 0; i < scene.size(); ++i) {
        for (ObjectIndex j : scene.relations().rows(a)[i]) {
          const auto& back = scene.relations().rows(b)[j];
          EXPECT_TRUE(std::binary_search(back.begin(), back.end(), i)) << file << " " << a << " " << i << " " << j;
        }
      }
    }
  }
}
