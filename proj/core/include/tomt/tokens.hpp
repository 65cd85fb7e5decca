#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tomt {

/// Lowercase, trimmed and mapped through the synonym table
/// (tiny->small, matte->rubber, ball->sphere, ...).
std::string canonical_token(std::string_view token);

/// "one".."ten" -> 1..10.
std::optional<int> number_word_value(std::string_view token);
std::string_view number_word(int value);  // empty when outside 1..10

bool is_color_token(std::string_view canonical);
bool is_size_token(std::string_view canonical);
bool is_material_token(std::string_view canonical);

const std::vector<std::string>& color_tokens();
const std::vector<std::string>& size_tokens();
const std::vector<std::string>& material_tokens();

enum class DescriptorSlot { Number, Color, Size, Material, Name };

std::string_view to_string(DescriptorSlot slot);

/// Slot a single canonical token falls into; unclassified tokens are names.
DescriptorSlot classify_token(std::string_view canonical);

/// Resolved filter_part argument: every slot at most once.
struct DescriptorList {
  std::optional<int> number;
  std::optional<std::string> color;
  std::optional<std::string> size;
  std::optional<std::string> material;
  std::optional<std::string> name;  // part name (PTR) or shape (CLEVR)

  bool empty() const noexcept { return !number && !color && !size && !material && !name; }
  bool operator==(const DescriptorList&) const = default;
};

using DescriptorToken = std::variant<std::string, std::int64_t>;

/// Throws RuntimeFailure(DescriptorError) when two tokens claim one slot.
DescriptorList classify_descriptors(const std::vector<DescriptorToken>& tokens);

}  // namespace tomt
