#include "brute_oracle.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>

namespace oracle {

namespace {

using nlohmann::json;

struct Fail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Val {
  enum Kind { Objs, Num, Bool, Text, Rels } kind = Objs;
  std::vector<int> objs;
  long long num = 0;
  bool flag = false;
  std::string text;
  std::vector<std::string> rels;
};

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::string canon(const std::string& raw) {
  const std::string t = lower(strip(raw));
  static const std::map<std::string, std::string> syn = {{"tiny", "small"},   {"big", "large"},
                                                         {"matte", "rubber"}, {"shiny", "metal"},
                                                         {"metallic", "metal"}, {"ball", "sphere"},
                                                         {"block", "cube"}};
  auto it = syn.find(t);
  return it == syn.end() ? t : it->second;
}

int number_word(const std::string& t) {
  static const char* words[] = {"one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};
  for (int i = 0; i < 10; ++i) {
    if (t == words[i]) return i + 1;
  }
  return 0;
}

bool in(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

const std::vector<std::string> kColors = {"gray", "red", "blue", "green", "brown", "purple", "cyan", "yellow"};
const std::vector<std::string> kSizes = {"small", "large"};
const std::vector<std::string> kMaterials = {"rubber", "metal"};

// --- raw scene access, recomputed on every call --------------------------

int object_count(const json& scene) { return static_cast<int>(scene["objects"].size()); }

std::string object_name(const json& scene, int i) { return scene["objects"][i].begin().key(); }

std::string category(const json& scene, int i) {
  std::string name = lower(object_name(scene, i));
  while (!name.empty() && std::isdigit(static_cast<unsigned char>(name.back()))) name.pop_back();
  return name;
}

bool part_based(const json& scene) { return scene["objects"][0].begin().value().is_object(); }

std::optional<std::pair<std::string, long long>> part(const json& scene, int i, const std::string& wanted) {
  for (auto& [name, body] : scene["objects"][i].begin().value().items()) {
    if (lower(name) == wanted) return std::make_pair(lower(body[0].get<std::string>()), body[1].get<long long>());
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, long long>> parts(const json& scene, int i) {
  std::vector<std::pair<std::string, long long>> out;
  for (auto& [name, body] : scene["objects"][i].begin().value().items()) {
    out.emplace_back(lower(body[0].get<std::string>()), body[1].get<long long>());
  }
  return out;
}

std::string attribute(const json& scene, int i, int slot) {
  return lower(scene["objects"][i].begin().value()[slot].get<std::string>());
}

bool related(const json& scene, const std::string& rel, int row, int member) {
  for (auto& [name, rows] : scene["relationships"].items()) {
    if (lower(name) != rel) continue;
    for (const auto& x : rows[row]) {
      if (x.get<int>() == member) return true;
    }
    return false;
  }
  throw Fail("unknown relation " + rel);
}

bool has_relation(const json& scene, const std::string& rel) {
  for (auto& [name, rows] : scene["relationships"].items()) {
    if (lower(name) == rel) return true;
  }
  return false;
}

// --- parsing -----------------------------------------------------------------

struct RawArg {
  enum Kind { Str, Int, Var, List } kind;
  std::string text;
  long long number = 0;
  std::vector<RawArg> items;
};

std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quoted && c == '\\' && i + 1 < s.size()) {
      cur += c;
      cur += s[++i];
      continue;
    }
    if (c == '"') quoted = !quoted;
    if (!quoted && c == '[') ++depth;
    if (!quoted && c == ']') --depth;
    if (!quoted && depth == 0 && c == ',') {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip(cur).empty() || !out.empty()) out.push_back(strip(cur));
  return out;
}

RawArg parse_arg(const std::string& text, bool in_list) {
  static const std::regex int_re(R"(^-?\d+$)");
  static const std::regex var_re(R"(^[A-Za-z_][A-Za-z0-9_]*$)");
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    std::string v;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      if (text[i] == '\\' && i + 2 < text.size()) ++i;
      v += text[i];
    }
    return {RawArg::Str, v};
  }
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
    if (in_list) throw Fail("nested list");
    RawArg list{RawArg::List, ""};
    const std::string inner = strip(text.substr(1, text.size() - 2));
    if (!inner.empty()) {
      for (const auto& item : split_top(inner)) list.items.push_back(parse_arg(item, true));
    }
    return list;
  }
  if (std::regex_match(text, int_re)) {
    if (!in_list) throw Fail("bare integer");
    return {RawArg::Int, text, std::stoll(text)};
  }
  if (std::regex_match(text, var_re)) return {RawArg::Var, text};
  throw Fail("bad argument " + text);
}

// --- tools -------------------------------------------------------------------

const Val& objs_arg(const Val& v) {
  if (v.kind != Val::Objs) throw Fail("objects expected");
  return v;
}

int one(const Val& v) {
  if (objs_arg(v).objs.size() != 1) throw Fail("one object expected");
  return v.objs[0];
}

long long num_arg(const Val& v) {
  if (v.kind != Val::Num) throw Fail("number expected");
  return v.num;
}

std::string text_arg(const Val& v) {
  if (v.kind != Val::Text) throw Fail("text expected");
  return v.text;
}

Val objs(std::vector<int> o) {
  std::sort(o.begin(), o.end());
  Val v;
  v.kind = Val::Objs;
  v.objs = std::move(o);
  return v;
}
Val num(long long n) {
  Val v;
  v.kind = Val::Num;
  v.num = n;
  return v;
}
Val boolean(bool b) {
  Val v;
  v.kind = Val::Bool;
  v.flag = b;
  return v;
}
Val text(std::string t) {
  Val v;
  v.kind = Val::Text;
  v.text = std::move(t);
  return v;
}

struct Descriptor {
  std::optional<long long> number;
  std::optional<std::string> color, size, material, name;
};

void put(std::optional<std::string>& slot, const std::string& value) {
  if (slot) throw Fail("slot used twice");
  slot = value;
}

Descriptor descriptor(const std::vector<Val>& tokens) {
  Descriptor d;
  for (const auto& t : tokens) {
    if (t.kind == Val::Num) {
      if (d.number) throw Fail("slot used twice");
      d.number = t.num;
      continue;
    }
    const std::string c = canon(text_arg(t));
    if (int n = number_word(c)) {
      if (d.number) throw Fail("slot used twice");
      d.number = n;
    } else if (in(kColors, c)) {
      put(d.color, c);
    } else if (in(kSizes, c)) {
      put(d.size, c);
    } else if (in(kMaterials, c)) {
      put(d.material, c);
    } else {
      put(d.name, c);
    }
  }
  if (!d.number && !d.color && !d.size && !d.material && !d.name) throw Fail("empty descriptor");
  return d;
}

bool descriptor_matches(const json& scene, int i, const Descriptor& d) {
  if (part_based(scene)) {
    if (d.size || d.material) return false;
    auto ok = [&](const std::pair<std::string, long long>& p) {
      return (!d.color || p.first == *d.color) && (!d.number || p.second == *d.number);
    };
    if (d.name) {
      auto p = part(scene, i, *d.name);
      return p && ok(*p);
    }
    for (const auto& p : parts(scene, i)) {
      if (ok(p)) return true;
    }
    return false;
  }
  if (d.number) return false;
  return (!d.color || attribute(scene, i, 0) == *d.color) && (!d.size || attribute(scene, i, 1) == *d.size) &&
         (!d.material || attribute(scene, i, 2) == *d.material) && (!d.name || category(scene, i) == *d.name);
}

std::vector<std::string> relation_list(const Val& v) {
  if (v.kind == Val::Rels) return v.rels;
  if (v.kind == Val::Text) return {lower(strip(v.text))};
  throw Fail("relation expected");
}

Val call(const std::string& fn, const std::vector<Val>& a, const json& scene) {
  auto arity = [&](std::size_t n) {
    if (a.size() != n) throw Fail(fn + ": wrong arity");
  };
  if (fn == "filter_object" || fn == "filter_category") {
    arity(2);
    const std::string c = canon(text_arg(a[0]));
    std::vector<int> out;
    for (int i : objs_arg(a[1]).objs) {
      if (category(scene, i) == c) out.push_back(i);
    }
    return objs(out);
  }
  if (fn == "exclude_object") {
    arity(2);
    std::vector<int> out;
    for (int i : objs_arg(a[1]).objs) {
      if (std::find(objs_arg(a[0]).objs.begin(), a[0].objs.end(), i) == a[0].objs.end()) out.push_back(i);
    }
    return objs(out);
  }
  if (fn == "intersection") {
    arity(2);
    std::vector<int> out;
    for (int i : objs_arg(a[0]).objs) {
      if (std::find(objs_arg(a[1]).objs.begin(), a[1].objs.end(), i) != a[1].objs.end()) out.push_back(i);
    }
    return objs(out);
  }
  if (fn == "query_relation") {
    arity(2);
    const std::string rel = lower(strip(text_arg(a[0])));
    const int anchor = one(a[1]);
    if (!has_relation(scene, rel)) throw Fail("unknown relation");
    std::vector<int> out;
    for (int j = 0; j < object_count(scene); ++j) {
      if (related(scene, rel, anchor, j)) out.push_back(j);
    }
    return objs(out);
  }
  if (fn == "get_relation") {
    arity(2);
    const int x = one(a[0]), y = one(a[1]);
    if (x == y) throw Fail("same object");
    std::vector<std::string> order = {"front", "behind", "left", "right", "above", "below"};
    std::vector<std::string> extra;
    for (auto& [name, rows] : scene["relationships"].items()) {
      if (!in(order, lower(name))) extra.push_back(lower(name));
    }
    std::sort(extra.begin(), extra.end());
    order.insert(order.end(), extra.begin(), extra.end());
    Val v;
    v.kind = Val::Rels;
    for (const auto& r : order) {
      if (has_relation(scene, r) && related(scene, r, y, x)) v.rels.push_back(r);
    }
    if (v.rels.empty()) throw Fail("no relation");
    return v;
  }
  if (fn == "filter_relation") {
    arity(3);
    const auto rels = relation_list(a[0]);
    const int anchor = one(a[1]);
    if (rels.empty()) throw Fail("no relation");
    for (const auto& r : rels) {
      if (!has_relation(scene, r)) throw Fail("unknown relation");
    }
    std::vector<int> out;
    for (int y : objs_arg(a[2]).objs) {
      if (y == anchor) continue;
      bool all = true;
      for (const auto& r : rels) all = all && related(scene, r, y, anchor);
      if (all) out.push_back(y);
    }
    return objs(out);
  }
  if (fn == "query_category") {
    arity(1);
    return text(category(scene, one(a[0])));
  }
  if (fn == "query_part") {
    arity(2);
    const std::string c = canon(text_arg(a[0]));
    const int i = one(a[1]);
    if (!part_based(scene)) throw Fail("style");
    std::vector<std::string> hits;
    for (auto& [name, body] : scene["objects"][i].begin().value().items()) {
      if (lower(body[0].get<std::string>()) == c) hits.push_back(lower(name));
    }
    if (hits.size() != 1) throw Fail("query_part: not exactly one part");
    return text(hits[0]);
  }
  if (fn == "query_color") {
    if (a.size() == 1) {
      const int i = one(a[0]);
      if (part_based(scene)) throw Fail("style");
      return text(attribute(scene, i, 0));
    }
    arity(2);
    const std::string p = canon(text_arg(a[0]));
    const int i = one(a[1]);
    if (!part_based(scene)) throw Fail("style");
    auto found = part(scene, i, p);
    if (!found) throw Fail("no such part");
    return text(found->first);
  }
  if (fn == "query_size") {
    arity(1);
    const int i = one(a[0]);
    if (part_based(scene)) throw Fail("style");
    return text(attribute(scene, i, 1));
  }
  if (fn == "count_part") {
    arity(2);
    const std::string p = canon(text_arg(a[0]));
    const int i = one(a[1]);
    if (!part_based(scene)) throw Fail("style");
    auto found = part(scene, i, p);
    return num(found ? found->second : 0);
  }
  if (fn == "count_object") {
    arity(1);
    return num(static_cast<long long>(objs_arg(a[0]).objs.size()));
  }
  if (fn == "sum") {
    arity(2);
    return num(num_arg(a[0]) + num_arg(a[1]));
  }
  if (fn == "equal") {
    arity(2);
    if (a[0].kind == Val::Num && a[1].kind == Val::Num) return boolean(a[0].num == a[1].num);
    if (a[0].kind == Val::Text && a[1].kind == Val::Text) return boolean(canon(a[0].text) == canon(a[1].text));
    throw Fail("equal: incomparable");
  }
  if (fn == "more_than") {
    arity(2);
    return boolean(num_arg(a[0]) > num_arg(a[1]));
  }
  if (fn == "few_than" || fn == "fewer_than") {
    arity(2);
    return boolean(num_arg(a[0]) < num_arg(a[1]));
  }
  if (fn == "exist") {
    arity(1);
    return boolean(!objs_arg(a[0]).objs.empty());
  }
  throw Fail("unknown function " + fn);
}

std::string render(const Val& v) {
  std::string out;
  switch (v.kind) {
    case Val::Objs:
      out = "objs:";
      for (std::size_t i = 0; i < v.objs.size(); ++i) out += (i ? "," : "") + std::to_string(v.objs[i]);
      return out;
    case Val::Num: return "num:" + std::to_string(v.num);
    case Val::Bool: return std::string("bool:") + (v.flag ? "yes" : "no");
    case Val::Text: return "text:" + v.text;
    case Val::Rels:
      out = "rels:";
      for (std::size_t i = 0; i < v.rels.size(); ++i) out += (i ? "," : "") + v.rels[i];
      return out;
  }
  return out;
}

}  // namespace

Outcome run(const std::vector<std::string>& step_lines, const json& scene) {
  static const std::regex step_re(R"(^\s*Step\s*(\d+)\s*:\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$)");
  Outcome outcome;
  std::map<std::string, Val> env;
  std::vector<int> all(object_count(scene));
  for (int i = 0; i < object_count(scene); ++i) all[i] = i;
  env["all_obj"] = objs(all);
  try {
    for (const auto& line : step_lines) {
      std::smatch m;
      if (!std::regex_match(line, m, step_re)) throw Fail("unparsable: " + line);
      const std::string target = m[2], fn = m[3];
      std::vector<RawArg> raw;
      const std::string inner = strip(m[4]);
      if (!inner.empty()) {
        for (const auto& piece : split_top(inner)) raw.push_back(parse_arg(piece, false));
      }
      auto lookup = [&](const std::string& name) -> const Val& {
        auto it = env.find(name);
        if (it == env.end()) throw Fail("undefined " + name);
        return it->second;
      };
      Val result;
      if (fn == "filter_part") {
        if (raw.size() != 2) throw Fail("filter_part: wrong arity");
        if (raw[0].kind != RawArg::List) throw Fail("filter_part needs a list");
        std::vector<Val> tokens;
        for (const auto& item : raw[0].items) {
          if (item.kind == RawArg::Str) tokens.push_back(text(item.text));
          else if (item.kind == RawArg::Int) tokens.push_back(num(item.number));
          else {
            const Val& v = lookup(item.text);
            if (v.kind != Val::Num && v.kind != Val::Text) throw Fail("bad list variable");
            tokens.push_back(v);
          }
        }
        if (raw[1].kind != RawArg::Var) throw Fail("objects expected");
        const Val& pool = objs_arg(lookup(raw[1].text));
        const Descriptor d = descriptor(tokens);
        std::vector<int> out;
        for (int i : pool.objs) {
          if (descriptor_matches(scene, i, d)) out.push_back(i);
        }
        result = objs(out);
      } else {
        std::vector<Val> args;
        for (const auto& r : raw) {
          if (r.kind == RawArg::Str) args.push_back(text(r.text));
          else if (r.kind == RawArg::Var) args.push_back(lookup(r.text));
          else throw Fail("unexpected list or integer");
        }
        result = call(fn, args, scene);
      }
      if (target == "all_obj") throw Fail("all_obj is reserved");
      outcome.values.push_back(render(result));
      env[target] = result;
      if (target == "ans") {
        if (result.kind == Val::Bool) outcome.answer = result.flag ? "yes" : "no";
        else if (result.kind == Val::Num) outcome.answer = std::to_string(result.num);
        else if (result.kind == Val::Text) outcome.answer = lower(result.text);
        else throw Fail("unformattable answer");
        break;
      }
    }
    outcome.ok = true;
  } catch (const Fail& e) {
    outcome.ok = false;
    outcome.failure = e.what();
  } catch (const json::exception& e) {
    outcome.ok = false;
    outcome.failure = e.what();
  }
  return outcome;
}

}  // namespace oracle
