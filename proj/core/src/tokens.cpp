#include "tomt/tokens.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "text_util.hpp"
#include "tomt/errors.hpp"

namespace tomt {

namespace {

constexpr std::array<std::string_view, 10> kNumberWords = {"one", "two",   "three", "four", "five",
                                                           "six", "seven", "eight", "nine", "ten"};

constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kSynonyms = {{
    {"tiny", "small"},
    {"big", "large"},
    {"matte", "rubber"},
    {"shiny", "metal"},
    {"metallic", "metal"},
    {"ball", "sphere"},
    {"block", "cube"},
}};

bool contains(const std::vector<std::string>& table, std::string_view token) {
  return std::find(table.begin(), table.end(), token) != table.end();
}

}  // namespace

std::string canonical_token(std::string_view token) {
  std::string lowered = detail::to_lower(detail::trim(token));
  for (const auto& [from, to] : kSynonyms) {
    if (lowered == from) return std::string(to);
  }
  return lowered;
}

std::optional<int> number_word_value(std::string_view token) {
  const std::string lowered = detail::to_lower(detail::trim(token));
  for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
    if (lowered == kNumberWords[i]) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

std::string_view number_word(int value) {
  if (value < 1 || value > static_cast<int>(kNumberWords.size())) return {};
  return kNumberWords[static_cast<std::size_t>(value - 1)];
}

const std::vector<std::string>& color_tokens() {
  static const std::vector<std::string> kColors = {"gray", "red",    "blue", "green",
                                                   "brown", "purple", "cyan", "yellow"};
  return kColors;
}

const std::vector<std::string>& size_tokens() {
  static const std::vector<std::string> kSizes = {"small", "large"};
  return kSizes;
}

const std::vector<std::string>& material_tokens() {
  static const std::vector<std::string> kMaterials = {"rubber", "metal"};
  return kMaterials;
}

bool is_color_token(std::string_view canonical) { return contains(color_tokens(), canonical); }
bool is_size_token(std::string_view canonical) { return contains(size_tokens(), canonical); }
bool is_material_token(std::string_view canonical) { return contains(material_tokens(), canonical); }

std::string_view to_string(DescriptorSlot slot) {
  switch (slot) {
    case DescriptorSlot::Number: return "number";
    case DescriptorSlot::Color: return "color";
    case DescriptorSlot::Size: return "size";
    case DescriptorSlot::Material: return "material";
    case DescriptorSlot::Name: return "name";
  }
  return "name";
}

DescriptorSlot classify_token(std::string_view canonical) {
  if (number_word_value(canonical)) return DescriptorSlot::Number;
  if (is_color_token(canonical)) return DescriptorSlot::Color;
  if (is_size_token(canonical)) return DescriptorSlot::Size;
  if (is_material_token(canonical)) return DescriptorSlot::Material;
  return DescriptorSlot::Name;
}

DescriptorList classify_descriptors(const std::vector<DescriptorToken>& tokens) {
  DescriptorList out;
  auto claim = [](auto& slot, auto value, DescriptorSlot which) {
    if (slot) {
      throw RuntimeFailure(FailureKind::DescriptorError,
                           "more than one " + std::string(to_string(which)) + " in descriptor list");
    }
    slot = std::move(value);
  };
  for (const auto& token : tokens) {
    if (const auto* number = std::get_if<std::int64_t>(&token)) {
      claim(out.number, static_cast<int>(*number), DescriptorSlot::Number);
      continue;
    }
    const std::string canonical = canonical_token(std::get<std::string>(token));
    switch (classify_token(canonical)) {
      case DescriptorSlot::Number: claim(out.number, *number_word_value(canonical), DescriptorSlot::Number); break;
      case DescriptorSlot::Color: claim(out.color, canonical, DescriptorSlot::Color); break;
      case DescriptorSlot::Size: claim(out.size, canonical, DescriptorSlot::Size); break;
      case DescriptorSlot::Material: claim(out.material, canonical, DescriptorSlot::Material); break;
      case DescriptorSlot::Name: claim(out.name, canonical, DescriptorSlot::Name); break;
    }
  }
  return out;
}

}  // namespace tomt
