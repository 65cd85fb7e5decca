#include <gtest/gtest.h>

#include "tomt/errors.hpp"
#include "tomt/tokens.hpp"

using namespace tomt;

TEST(Tokens, Synonyms) {
  EXPECT_EQ(canonical_token("tiny"), "small");
  EXPECT_EQ(canonical_token(" Big "), "large");
  EXPECT_EQ(canonical_token("matte"), "rubber");
  EXPECT_EQ(canonical_token("shiny"), "metal");
  EXPECT_EQ(canonical_token("metallic"), "metal");
  EXPECT_EQ(canonical_token("ball"), "sphere");
  EXPECT_EQ(canonical_token("block"), "cube");
  EXPECT_EQ(canonical_token("Leg Bar"), "leg bar");
}

TEST(Tokens, NumberWords) {
  EXPECT_EQ(number_word_value("one"), 1);
  EXPECT_EQ(number_word_value("ten"), 10);
  EXPECT_FALSE(number_word_value("eleven").has_value());
  EXPECT_EQ(number_word(8), "eight");
  EXPECT_TRUE(number_word(0).empty());
  for (int i = 1; i <= 10; ++i) EXPECT_EQ(number_word_value(number_word(i)), i);
}

TEST(Tokens, Classification) {
  EXPECT_EQ(classify_token("six"), DescriptorSlot::Number);
  EXPECT_EQ(classify_token("cyan"), DescriptorSlot::Color);
  EXPECT_EQ(classify_token("small"), DescriptorSlot::Size);
  EXPECT_EQ(classify_token("rubber"), DescriptorSlot::Material);
  EXPECT_EQ(classify_token("sleep area"), DescriptorSlot::Name);
  EXPECT_EQ(color_tokens().size(), 8u);
  EXPECT_EQ(size_tokens().size(), 2u);
  EXPECT_EQ(material_tokens().size(), 2u);
}

TEST(Tokens, DescriptorList) {
  const DescriptorList d = classify_descriptors({std::string("tiny"), std::string("Gray"), std::string("metallic"),
                                                 std::string("ball")});
  EXPECT_EQ(d.size, "small");
  EXPECT_EQ(d.color, "gray");
  EXPECT_EQ(d.material, "metal");
  EXPECT_EQ(d.name, "sphere");
  EXPECT_FALSE(d.number);

  const DescriptorList n = classify_descriptors({std::int64_t{3}, std::string("leg bar")});
  EXPECT_EQ(n.number, 3);
  EXPECT_EQ(n.name, "leg bar");
}

TEST(Tokens, DuplicateSlotIsDescriptorError) {
  try {
    classify_descriptors({std::string("red"), std::string("blue")});
    FAIL();
  } catch (const RuntimeFailure& e) {
    EXPECT_EQ(e.kind(), FailureKind::DescriptorError);
  }
  EXPECT_THROW(classify_descriptors({std::string("two"), std::int64_t{2}}), RuntimeFailure);
}
