#include "tomt/interpreter.hpp"

#include <algorithm>
#include <iterator>

#include <json.hpp>

#include "text_util.hpp"

namespace tomt {

using nlohmann::json;

ValueKind kind_of(const Value& value) { return static_cast<ValueKind>(value.index()); }

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Objects: return "Objects";
    case ValueKind::Num: return "Num";
    case ValueKind::Bool: return "Bool";
    case ValueKind::Text: return "Text";
    case ValueKind::Relations: return "Relations";
  }
  return "Unknown";
}

std::string_view to_string(ParamKind kind) {
  switch (kind) {
    case ParamKind::Objects: return "Objects";
    case ParamKind::Num: return "Num";
    case ParamKind::Text: return "Text";
    case ParamKind::Relations: return "Relations";
    case ParamKind::Comparable: return "Num|Text";
    case ParamKind::Descriptors: return "DescriptorList";
  }
  return "Unknown";
}

const std::vector<ToolSignature>& tool_signatures() {
  using P = ParamKind;
  using V = ValueKind;
  static const std::vector<ToolSignature> kTools = {
      // filter
      {"filter_object", {{P::Text, P::Objects}}, V::Objects,
       "filter_object(category, object_list): keep the objects of the given category."},
      {"filter_part", {{P::Descriptors, P::Objects}}, V::Objects,
       "filter_part(part_list, object_list): keep the objects matching every listed part, count or attribute."},
      {"filter_category", {{P::Text, P::Objects}}, V::Objects,
       "filter_category(category, object_list): keep the objects whose category equals the given one."},
      {"exclude_object", {{P::Objects, P::Objects}}, V::Objects,
       "exclude_object(object, object_list): the object list without the given object."},
      // algebra
      {"count_part", {{P::Text, P::Objects}}, V::Num,
       "count_part(part, object): how many of the named part the object has."},
      {"count_object", {{P::Objects}}, V::Num, "count_object(object_list): the number of objects in the list."},
      {"sum", {{P::Num, P::Num}}, V::Num, "sum(num1, num2): num1 plus num2."},
      {"equal", {{P::Comparable, P::Comparable}}, V::Bool,
       "equal(input1, input2): whether two numbers or two attributes are the same."},
      {"more_than", {{P::Num, P::Num}}, V::Bool, "more_than(num1, num2): whether num1 is greater than num2."},
      {"few_than", {{P::Num, P::Num}}, V::Bool, "few_than(num1, num2): whether num1 is less than num2."},
      {"intersection", {{P::Objects, P::Objects}}, V::Objects,
       "intersection(object_list, object_list): the objects present in both lists."},
      {"exist", {{P::Objects}}, V::Bool, "exist(object_list): whether the object list is non-empty."},
      // relation
      {"query_relation", {{P::Text, P::Objects}}, V::Objects,
       "query_relation(relation, object): the objects standing in the relation to the object."},
      {"filter_relation", {{P::Relations, P::Objects, P::Objects}}, V::Objects,
       "filter_relation(relation, thing, object_list): the listed objects to which the thing stands in the "
       "relation."},
      {"get_relation", {{P::Objects, P::Objects}}, V::Relations,
       "get_relation(object, object): the spatial relations of the first object to the second."},
      // attribution
      {"query_category", {{P::Objects}}, V::Text, "query_category(object): the category of the object."},
      {"query_color", {{P::Objects}, {P::Text, P::Objects}}, V::Text,
       "query_color(part, object): the color of the part of the object; query_color(object) for plain objects."},
      {"query_part", {{P::Text, P::Objects}}, V::Text,
       "query_part(color, object): the name of the object's part with that color."},
      {"query_size", {{P::Objects}}, V::Text, "query_size(object): the size of the object."},
  };
  return kTools;
}

const ToolSignature* find_tool(std::string_view name) {
  if (name == "fewer_than") name = "few_than";
  const auto& tools = tool_signatures();
  auto it = std::find_if(tools.begin(), tools.end(), [&](const ToolSignature& t) { return t.name == name; });
  return it == tools.end() ? nullptr : &*it;
}

namespace tools {

namespace {

ObjectIndex single(const ObjectSet& obj, std::string_view tool) {
  if (obj.size() != 1) {
    throw RuntimeFailure(FailureKind::NonSingleton, std::string(tool) + " expects exactly one object, got " +
                                                        std::to_string(obj.size()));
  }
  return obj.front();
}

void require_style(const SceneGraph& scene, SceneStyle style, std::string_view tool) {
  if (scene.style() != style) {
    throw RuntimeFailure(FailureKind::UnsupportedStyle,
                         std::string(tool) + " needs a " + std::string(to_string(style)) + " scene");
  }
}

bool part_matches(const Part& part, const DescriptorList& d) {
  if (d.color && part.color != *d.color) return false;
  if (d.number && part.count != *d.number) return false;
  return true;
}

bool object_matches(const SceneObject& object, SceneStyle style, const DescriptorList& d) {
  if (style == SceneStyle::PartBased) {
    if (d.size || d.material) return false;
    if (d.name) {
      auto it = object.parts.find(*d.name);
      return it != object.parts.end() && part_matches(it->second, d);
    }
    return std::any_of(object.parts.begin(), object.parts.end(),
                       [&](const auto& entry) { return part_matches(entry.second, d); });
  }
  const Attributes& a = *object.attributes;
  if (d.number) return false;
  if (d.color && a.color != *d.color) return false;
  if (d.size && a.size != *d.size) return false;
  if (d.material && a.material != *d.material) return false;
  if (d.name && object.category != *d.name) return false;
  return true;
}

std::string relation_name(std::string_view relation) { return detail::to_lower(detail::trim(relation)); }

}  // namespace

ObjectSet filter_object(const SceneGraph& scene, std::string_view category, const ObjectSet& objs) {
  const std::string wanted = canonical_token(category);
  ObjectSet out;
  std::copy_if(objs.begin(), objs.end(), std::back_inserter(out),
               [&](ObjectIndex i) { return scene.object(i).category == wanted; });
  return out;
}

ObjectSet filter_part(const SceneGraph& scene, const DescriptorList& descriptors, const ObjectSet& objs) {
  if (descriptors.empty()) throw RuntimeFailure(FailureKind::DescriptorError, "empty descriptor list");
  ObjectSet out;
  std::copy_if(objs.begin(), objs.end(), std::back_inserter(out),
               [&](ObjectIndex i) { return object_matches(scene.object(i), scene.style(), descriptors); });
  return out;
}

ObjectSet filter_category(const SceneGraph& scene, std::string_view category, const ObjectSet& objs) {
  return filter_object(scene, category, objs);
}

ObjectSet exclude_object(const ObjectSet& obj, const ObjectSet& objs) {
  ObjectSet out;
  std::set_difference(objs.begin(), objs.end(), obj.begin(), obj.end(), std::back_inserter(out));
  return out;
}

ObjectSet intersection(const ObjectSet& a, const ObjectSet& b) {
  ObjectSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ObjectSet query_relation(const SceneGraph& scene, std::string_view relation, const ObjectSet& obj) {
  const ObjectIndex anchor = single(obj, "query_relation");
  return objects_in_relation(scene, relation_name(relation), anchor);
}

std::vector<std::string> get_relation(const SceneGraph& scene, const ObjectSet& a, const ObjectSet& b) {
  const ObjectIndex first = single(a, "get_relation");
  const ObjectIndex second = single(b, "get_relation");
  if (first == second) throw RuntimeFailure(FailureKind::SameObject, "get_relation needs two distinct objects");

  static constexpr std::string_view kOrder[] = {"front", "behind", "left", "right", "above", "below"};
  std::vector<std::string> order(std::begin(kOrder), std::end(kOrder));
  for (const auto& name : scene.relations().names()) {
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  }
  std::vector<std::string> out;
  for (const auto& name : order) {
    if (!scene.relations().contains(name)) continue;
    const ObjectSet& row = scene.relations().rows(name)[second];
    if (std::binary_search(row.begin(), row.end(), first)) out.push_back(name);
  }
  if (out.empty()) throw RuntimeFailure(FailureKind::NoRelation, "objects are not related");
  return out;
}

ObjectSet filter_relation(const SceneGraph& scene, const std::vector<std::string>& relations, const ObjectSet& thing,
                          const ObjectSet& objs) {
  const ObjectIndex anchor = single(thing, "filter_relation");
  if (relations.empty()) throw RuntimeFailure(FailureKind::NoRelation, "filter_relation needs a relation");
  std::vector<const RelationTable::Rows*> tables;
  for (const auto& name : relations) tables.push_back(&scene.relations().rows(relation_name(name)));
  ObjectSet out;
  for (ObjectIndex candidate : objs) {
    if (candidate == anchor) continue;
    const bool holds = std::all_of(tables.begin(), tables.end(), [&](const RelationTable::Rows* rows) {
      const ObjectSet& row = (*rows)[candidate];
      return std::binary_search(row.begin(), row.end(), anchor);
    });
    if (holds) out.push_back(candidate);
  }
  return out;
}

std::string query_category(const SceneGraph& scene, const ObjectSet& obj) {
  return scene.object(single(obj, "query_category")).category;
}

std::string query_part(const SceneGraph& scene, std::string_view color, const ObjectSet& obj) {
  const ObjectIndex index = single(obj, "query_part");
  require_style(scene, SceneStyle::PartBased, "query_part");
  const std::string wanted = canonical_token(color);
  std::vector<std::string> matches;
  for (const auto& [name, part] : scene.object(index).parts) {
    if (part.color == wanted) matches.push_back(name);
  }
  if (matches.empty()) throw RuntimeFailure(FailureKind::NoMatch, "no " + wanted + " part");
  if (matches.size() > 1) throw RuntimeFailure(FailureKind::AmbiguousPart, "several " + wanted + " parts");
  return matches.front();
}

std::string query_color(const SceneGraph& scene, std::optional<std::string_view> part, const ObjectSet& obj) {
  const ObjectIndex index = single(obj, "query_color");
  const SceneObject& object = scene.object(index);
  if (part) {
    require_style(scene, SceneStyle::PartBased, "query_color(part, object)");
    const std::string wanted = canonical_token(*part);
    auto it = object.parts.find(wanted);
    if (it == object.parts.end()) {
      throw RuntimeFailure(FailureKind::NoSuchPart, object.name + " has no part '" + wanted + "'");
    }
    return it->second.color;
  }
  require_style(scene, SceneStyle::AttributeBased, "query_color(object)");
  return object.attributes->color;
}

std::string query_size(const SceneGraph& scene, const ObjectSet& obj) {
  const ObjectIndex index = single(obj, "query_size");
  require_style(scene, SceneStyle::AttributeBased, "query_size");
  return scene.object(index).attributes->size;
}

std::int64_t count_part(const SceneGraph& scene, std::string_view part, const ObjectSet& obj) {
  const ObjectIndex index = single(obj, "count_part");
  require_style(scene, SceneStyle::PartBased, "count_part");
  const auto& parts = scene.object(index).parts;
  auto it = parts.find(canonical_token(part));
  return it == parts.end() ? 0 : it->second.count;
}

std::int64_t count_object(const ObjectSet& objs) { return static_cast<std::int64_t>(objs.size()); }

std::int64_t sum(std::int64_t a, std::int64_t b) { return a + b; }

bool equal(const Value& a, const Value& b) {
  if (const auto* x = std::get_if<Num>(&a)) {
    if (const auto* y = std::get_if<Num>(&b)) return x->value == y->value;
  }
  if (const auto* x = std::get_if<Text>(&a)) {
    if (const auto* y = std::get_if<Text>(&b)) return canonical_token(x->value) == canonical_token(y->value);
  }
  throw RuntimeFailure(FailureKind::TypeMismatch, "equal compares two numbers or two texts, got " +
                                                      std::string(to_string(kind_of(a))) + " and " +
                                                      std::string(to_string(kind_of(b))));
}

bool more_than(std::int64_t a, std::int64_t b) { return a > b; }
bool few_than(std::int64_t a, std::int64_t b) { return a < b; }
bool exist(const ObjectSet& objs) { return !objs.empty(); }

}  // namespace tools

// ---------------------------------------------------------------------------

Env::Env(const SceneGraph& scene) { bindings_.emplace(std::string(kAllObjects), Objects{scene.all_objects()}); }

const Value* Env::find(std::string_view name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Env::bind(const std::string& name, Value value) {
  if (name == kAllObjects) throw RuntimeFailure(FailureKind::ReservedVariable, "all_obj cannot be reassigned");
  bindings_.insert_or_assign(name, std::move(value));
}

namespace {

// Typed access to call arguments.
class ArgReader {
 public:
  ArgReader(const Call& call, const Env& env) : call_(call), env_(env) {}

  const Value& variable(const VarRef& ref) const {
    const Value* value = env_.find(ref.name);
    if (!value) throw RuntimeFailure(FailureKind::UndefinedVariable, "'" + ref.name + "' is not defined");
    return *value;
  }

  Value value(std::size_t i) const {
    const Arg& arg = call_.args[i];
    if (const auto* s = std::get_if<StringLiteral>(&arg)) return Text{detail::to_lower(s->value)};
    if (const auto* v = std::get_if<VarRef>(&arg)) return variable(*v);
    mismatch(i, "a scalar argument");
  }

  const ObjectSet& objects(std::size_t i) const {
    const Arg& arg = call_.args[i];
    if (const auto* v = std::get_if<VarRef>(&arg)) {
      if (const auto* objs = std::get_if<Objects>(&variable(*v))) return objs->items;
    }
    mismatch(i, "an object list");
  }

  std::int64_t number(std::size_t i) const {
    const Value v = value(i);
    if (const auto* n = std::get_if<Num>(&v)) return n->value;
    mismatch(i, "a number");
  }

  std::string text(std::size_t i) const {
    const Value v = value(i);
    if (const auto* t = std::get_if<Text>(&v)) return t->value;
    mismatch(i, "a text");
  }

  std::vector<std::string> relations(std::size_t i) const {
    const Value v = value(i);
    if (const auto* r = std::get_if<Relations>(&v)) return r->names;
    if (const auto* t = std::get_if<Text>(&v)) return {t->value};
    mismatch(i, "a relation set");
  }

  DescriptorList descriptors(std::size_t i) const {
    const auto* list = std::get_if<ListLiteral>(&call_.args[i]);
    if (!list) mismatch(i, "a list literal");
    std::vector<DescriptorToken> tokens;
    for (const auto& item : list->items) {
      if (const auto* s = std::get_if<StringLiteral>(&item)) {
        tokens.emplace_back(s->value);
      } else if (const auto* n = std::get_if<IntLiteral>(&item)) {
        tokens.emplace_back(n->value);
      } else {
        const Value& v = variable(std::get<VarRef>(item));
        if (const auto* num = std::get_if<Num>(&v)) tokens.emplace_back(num->value);
        else if (const auto* text = std::get_if<Text>(&v)) tokens.emplace_back(text->value);
        else mismatch(i, "list elements that are numbers or texts");
      }
    }
    return classify_descriptors(tokens);
  }

 private:
  [[noreturn]] void mismatch(std::size_t i, const std::string& expected) const {
    throw RuntimeFailure(FailureKind::TypeMismatch,
                         call_.function + " argument " + std::to_string(i + 1) + " must be " + expected);
  }

  const Call& call_;
  const Env& env_;
};

}  // namespace

Value evaluate_call(const Call& call, const Env& env, const SceneGraph& scene) {
  const ToolSignature* tool = find_tool(call.function);
  if (!tool) throw RuntimeFailure(FailureKind::UnknownFunction, "'" + call.function + "' is not a tool");
  const bool arity_ok = std::any_of(tool->forms.begin(), tool->forms.end(),
                                    [&](const auto& form) { return form.size() == call.args.size(); });
  if (!arity_ok) {
    throw RuntimeFailure(FailureKind::ArityMismatch,
                         call.function + " does not take " + std::to_string(call.args.size()) + " arguments");
  }

  const ArgReader args(call, env);
  const std::string& f = tool->name;
  if (f == "filter_object") return Objects{tools::filter_object(scene, args.text(0), args.objects(1))};
  if (f == "filter_part") return Objects{tools::filter_part(scene, args.descriptors(0), args.objects(1))};
  if (f == "filter_category") return Objects{tools::filter_category(scene, args.text(0), args.objects(1))};
  if (f == "exclude_object") return Objects{tools::exclude_object(args.objects(0), args.objects(1))};
  if (f == "intersection") return Objects{tools::intersection(args.objects(0), args.objects(1))};
  if (f == "query_relation") return Objects{tools::query_relation(scene, args.text(0), args.objects(1))};
  if (f == "get_relation") return Relations{tools::get_relation(scene, args.objects(0), args.objects(1))};
  if (f == "filter_relation") {
    return Objects{tools::filter_relation(scene, args.relations(0), args.objects(1), args.objects(2))};
  }
  if (f == "query_category") return Text{tools::query_category(scene, args.objects(0))};
  if (f == "query_part") return Text{tools::query_part(scene, args.text(0), args.objects(1))};
  if (f == "query_color") {
    if (call.args.size() == 1) return Text{tools::query_color(scene, std::nullopt, args.objects(0))};
    const std::string part = args.text(0);
    return Text{tools::query_color(scene, part, args.objects(1))};
  }
  if (f == "query_size") return Text{tools::query_size(scene, args.objects(0))};
  if (f == "count_part") return Num{tools::count_part(scene, args.text(0), args.objects(1))};
  if (f == "count_object") return Num{tools::count_object(args.objects(0))};
  if (f == "sum") return Num{tools::sum(args.number(0), args.number(1))};
  if (f == "equal") return Bool{tools::equal(args.value(0), args.value(1))};
  if (f == "more_than") return Bool{tools::more_than(args.number(0), args.number(1))};
  if (f == "few_than") return Bool{tools::few_than(args.number(0), args.number(1))};
  if (f == "exist") return Bool{tools::exist(args.objects(0))};
  throw RuntimeFailure(FailureKind::UnknownFunction, "'" + call.function + "' has no implementation");
}

ExecutionOutcome run_plan(const Plan& plan, const SceneGraph& scene, std::string_view stop_sign) {
  ExecutionOutcome outcome;
  Env env(scene);
  for (const auto& step : plan.steps) {
    try {
      Value value = evaluate_call(step.call, env, scene);
      env.bind(step.target, value);
      outcome.trace.entries.push_back(TraceEntry{step, value});
      if (step.target == stop_sign) {
        outcome.trace.answer = std::move(value);
        break;
      }
    } catch (const RuntimeFailure& failure) {
      outcome.failure = failure.at_step(step.index);
      break;
    }
  }
  return outcome;
}

Trace execute_plan(const Plan& plan, const SceneGraph& scene, std::string_view stop_sign) {
  ExecutionOutcome outcome = run_plan(plan, scene, stop_sign);
  if (outcome.failure) throw *outcome.failure;
  return std::move(outcome.trace);
}

std::string format_answer(const Value& value) {
  if (const auto* b = std::get_if<Bool>(&value)) return b->value ? "yes" : "no";
  if (const auto* n = std::get_if<Num>(&value)) return std::to_string(n->value);
  if (const auto* t = std::get_if<Text>(&value)) return detail::to_lower(t->value);
  throw RuntimeFailure(FailureKind::UnformattableValue,
                       std::string(to_string(kind_of(value))) + " cannot be a final answer");
}

namespace {

json value_json(const Value& value) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Objects>) return v.items;
        else if constexpr (std::is_same_v<T, Relations>) return v.names;
        else return v.value;
      },
      value);
}

}  // namespace

std::string render_value(const Value& value) { return value_json(value).dump(); }

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const auto& entry : trace.entries) {
    json line = {{"step", entry.step.index}, {"target", entry.step.target}, {"value", value_json(entry.value)}};
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace tomt
