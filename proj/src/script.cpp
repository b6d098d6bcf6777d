#include "acl/script.hpp"

#include <sstream>

#include <json.hpp>

#include "acl/anticontract.hpp"
#include "acl/cursor.hpp"
#include "acl/errors.hpp"

namespace acl {

namespace {

struct MapAst {
  bool star = false;
  std::vector<int> singular;
  std::vector<MapAst> slices;
};

struct ObjectAst {
  std::string label;  // empty for zigzags
  std::vector<ObjectAst> regular, singular;
  std::vector<MapAst> forward, backward;
};

MapAst parse_map_ast(Cursor& c) {
  MapAst m;
  if (c.accept("*")) {
    m.star = true;
    return m;
  }
  c.expect("{");
  if (c.peek_digit()) {
    do m.singular.push_back(c.integer());
    while (c.accept(","));
  }
  c.expect(":");
  if (!c.accept("}")) {
    do m.slices.push_back(parse_map_ast(c));
    while (c.accept(","));
    c.expect("}");
  }
  return m;
}

ObjectAst parse_object_ast(Cursor& c) {
  ObjectAst o;
  if (!c.accept("zz[")) {
    o.label = c.identifier();
    return o;
  }
  o.regular.push_back(parse_object_ast(c));
  while (c.accept("|")) {
    o.forward.push_back(parse_map_ast(c));
    c.expect(">");
    o.singular.push_back(parse_object_ast(c));
    c.expect("<");
    o.backward.push_back(parse_map_ast(c));
    c.expect("|");
    o.regular.push_back(parse_object_ast(c));
  }
  c.expect("]");
  return o;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::shared_ptr<const Signature> parse_signature(std::string_view text) {
  Cursor c(text);
  std::vector<Label> labels;
  if (!c.at_end()) {
    do {
      std::string name = c.identifier();
      c.expect(":");
      labels.push_back({std::move(name), c.integer()});
    } while (c.accept(","));
  }
  if (!c.at_end()) c.fail("trailing input after signature");
  if (labels.empty()) throw ParseError("empty signature");
  return std::make_shared<Signature>(std::move(labels));
}

std::string print_signature(const Signature& sig) {
  std::string s;
  for (const auto& l : sig.labels())
    s += (s.empty() ? "" : ", ") + l.name + ":" + std::to_string(l.dim);
  return s;
}

int dimension_of(const Object& x) {
  if (x.is_label()) return 0;
  if (!x.is_zigzag()) throw ValidationError("not an object of the zigzag tower");
  return 1 + dimension_of(x.zigzag().regular.front());
}

DiagramContext::DiagramContext(std::shared_ptr<const Signature> sig) : sig_(std::move(sig)) {}

CategoryPtr DiagramContext::level_ptr(int k) const { return zig_tower(sig_, k); }
const Category& DiagramContext::level(int k) const { return *level_ptr(k); }

namespace {

Object build_object(const DiagramContext& ctx, const ObjectAst& ast, int& dim);

Morphism build_map(const DiagramContext& ctx, const MapAst& ast, const Object& source,
                   const Object& target, int k) {
  if (k == 0) {
    if (!ast.star) throw ParseError("maps between labels are written '*'");
    Morphism f = Morphism::arrow(source, target);
    ctx.signature().check_morphism(f);
    return f;
  }
  if (ast.star) throw ParseError("maps between diagrams are written {images: slices}");
  const Zigzag& x = source.zigzag();
  const Zigzag& y = target.zigzag();
  if (static_cast<int>(ast.singular.size()) != x.length())
    throw ValidationError("map has " + std::to_string(ast.singular.size()) +
                          " singular images but its source has length " +
                          std::to_string(x.length()));
  if (ast.slices.size() != ast.singular.size())
    throw ValidationError("map needs one slice per singular height");
  ZigzagMapData d;
  d.singular = ast.singular;
  for (std::size_t i = 0; i < ast.singular.size(); ++i) {
    const int t = ast.singular[i];
    if (t < 0 || t >= y.length()) throw ValidationError("singular image out of range");
    d.singular_slices.push_back(build_map(ctx, ast.slices[i], x.singular[i], y.singular[t], k - 1));
  }
  const Category& base = ctx.level(k - 1);
  for (const auto& r : y.regular) d.regular_slices.push_back(base.identity(r));
  return make_zigzag_map(base, x, y, std::move(d));
}

Object build_object(const DiagramContext& ctx, const ObjectAst& ast, int& dim) {
  if (!ast.label.empty()) {
    dim = 0;
    return Object(ctx.signature().label(ast.label));
  }
  Zigzag z;
  int inner = -1;
  auto sub = [&](const ObjectAst& a) {
    int d = 0;
    Object o = build_object(ctx, a, d);
    if (inner >= 0 && d != inner) throw ValidationError("zigzag mixes dimensions");
    inner = d;
    return o;
  };
  for (const auto& r : ast.regular) z.regular.push_back(sub(r));
  for (const auto& s : ast.singular) z.singular.push_back(sub(s));
  for (std::size_t i = 0; i < ast.singular.size(); ++i) {
    z.forward.push_back(build_map(ctx, ast.forward[i], z.regular[i], z.singular[i], inner));
    z.backward.push_back(build_map(ctx, ast.backward[i], z.regular[i + 1], z.singular[i], inner));
  }
  validate_zigzag(ctx.level(inner), z);
  dim = inner + 1;
  return Object(std::move(z));
}

}  // namespace

NDiagram DiagramContext::parse(std::string_view text) const {
  Cursor c(text);
  ObjectAst ast = parse_object_ast(c);
  if (!c.at_end()) c.fail("trailing input after diagram");
  NDiagram d;
  d.value = build_object(*this, ast, d.dim);
  return d;
}

Morphism DiagramContext::parse_map(std::string_view text, const Object& source,
                                   const Object& target, int k) const {
  Cursor c(text);
  MapAst ast = parse_map_ast(c);
  if (!c.at_end()) c.fail("trailing input after map");
  return build_map(*this, ast, source, target, k);
}

std::string DiagramContext::print(const NDiagram& d) const { return print(d.value); }

std::string DiagramContext::print(const Object& x) const {
  if (x.is_label()) return x.label().name;
  const Zigzag& z = x.zigzag();
  std::string s = "zz[" + print(z.regular[0]);
  for (int i = 0; i < z.length(); ++i)
    s += " | " + print_map(z.forward[i]) + " > " + print(z.singular[i]) + " < " +
         print_map(z.backward[i]) + " | " + print(z.regular[i + 1]);
  return s + "]";
}

std::string DiagramContext::print_map(const Morphism& f) const {
  if (!f.is_zigzag_map()) return "*";
  const auto& d = f.zigzag_map();
  if (d.singular.empty()) return "{:}";
  std::string s = "{" + join_ints(d.singular) + ":";
  for (std::size_t i = 0; i < d.singular_slices.size(); ++i)
    s += (i ? ", " : " ") + print_map(d.singular_slices[i]);
  return s + "}";
}

// --- scripts ---------------------------------------------------------------

std::string TraceEntry::to_json() const {
  nlohmann::ordered_json j;
  j["step"] = step;
  j["command"] = command;
  j["pick"] = pick ? nlohmann::ordered_json(*pick) : nlohmann::ordered_json(nullptr);
  j["hash"] = hash;
  j["recursive_steps"] = recursive_steps;
  j["round_trip"] = round_trip;
  return j.dump();
}

int exit_code(StepStatus s) {
  switch (s) {
    case StepStatus::ok: return 0;
    case StepStatus::validation_failed: return 1;
    case StepStatus::parse_failed: return 2;
    case StepStatus::capability_missing: return 3;
  }
  return 1;
}

namespace {

// Statements: one per line, continued while brackets are open.
std::vector<std::pair<int, std::string>> statements(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line, cur;
  int depth = 0, line_no = 0, start = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (cur.empty()) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      start = line_no;
    }
    for (char ch : line) depth += (ch == '[' || ch == '{') - (ch == ']' || ch == '}');
    cur += line + ' ';
    if (depth <= 0) {
      out.emplace_back(start, cur);
      cur.clear();
      depth = 0;
    }
  }
  if (!cur.empty()) throw ParseError("line " + std::to_string(start) + ": unbalanced brackets");
  return out;
}

Bias parse_bias(const std::string& s) {
  if (s == "left") return Bias::left;
  if (s == "right") return Bias::right;
  if (s == "none") return Bias::none;
  throw ParseError("bias must be left, right or none");
}

class Runner {
 public:
  Runner(const ScriptOptions& options, ScriptResult& out) : options_(options), out_(out) {}

  void statement(const std::string& text) {
    Cursor c(text);
    const std::string word = c.identifier();
    if (word == "signature") {
      sig_ = parse_signature(c.rest());
      ctx_.emplace(sig_);
      out_.signature = sig_;
    } else if (word == "diagram") {
      need_context();
      if (out_.current) throw ParseError("diagram given twice");
      NDiagram d = ctx_->parse(c.rest());
      if (d.dim == 0) throw ValidationError("the workspace needs a diagram of dimension >= 1");
      out_.initial = d;
      out_.current = d;
      out_.history = point_zigzag(d.value);
    } else if (word == "let") {
      need_context();
      std::string name = c.identifier();
      c.expect("=");
      names_[name] = ctx_->parse(c.rest());
    } else if (word == "expect") {
      need_diagram();
      NDiagram want = ctx_->parse(c.rest());
      if (!(want.value == out_.current->value))
        throw ValidationError("expected " + ctx_->print(want) + " but have " +
                              ctx_->print(*out_.current));
    } else if (word == "contract") {
      contract(c, text);
    } else if (word == "expand") {
      expand(c, text);
    } else if (word == "anticontract") {
      anticontract(c, text);
    } else {
      throw ParseError("unknown command '" + word + "'");
    }
  }

 private:
  void need_context() const {
    if (!ctx_) throw ParseError("no signature given");
  }
  void need_diagram() const {
    need_context();
    if (!out_.current) throw ParseError("no diagram given");
  }

  // Options `key=value` after the positional arguments.
  std::map<std::string, std::string> options(Cursor& c) {
    std::map<std::string, std::string> out;
    while (!c.at_end()) {
      std::string key = c.identifier();
      c.expect("=");
      if (key == "sink" || key == "to") {
        out[key] = std::string(c.rest());
        break;
      }
      out[key] = c.identifier();
    }
    return out;
  }

  void record(const std::string& command, Morphism fwd, Morphism bwd, Object next,
              TraceEntry entry) {
    Zigzag& h = *out_.history;
    h.singular.push_back(fwd.target());
    h.forward.push_back(std::move(fwd));
    h.backward.push_back(std::move(bwd));
    h.regular.push_back(next);
    out_.current->value = std::move(next);
    entry.step = static_cast<int>(out_.trace.size()) + 1;
    entry.command = command;
    entry.hash = content_hash(ctx_->print(*out_.current));
    out_.trace.push_back(std::move(entry));
  }

  void contract(Cursor& c, const std::string& text) {
    need_diagram();
    const int h = c.integer();
    auto opt = options(c);
    const int len = opt.count("len") ? std::stoi(opt["len"]) : 2;
    const Bias bias = opt.count("bias") ? parse_bias(opt["bias"]) : Bias::none;
    const NDiagram& d = *out_.current;
    const Zigzag& z = d.value.zigzag();
    if (h < 0 || len < 0 || h + len > z.length())
      throw ValidationError("contraction range [" + std::to_string(h) + ", " +
                            std::to_string(h + len) + ") outside the diagram");
    const Category& base = ctx_->level(d.dim - 1);
    Morphism f = contract_range(base, z, h, h + len, bias);
    Object next = f.target();
    const Category& top = ctx_->level(d.dim);
    record(trim(text), f, top.identity(next), next, {});
  }

  // Reverse of a contraction: `to` must contract onto the current diagram.
  void expand(Cursor& c, const std::string& text) {
    need_diagram();
    const int h = c.integer();
    auto opt = options(c);
    const int len = opt.count("len") ? std::stoi(opt["len"]) : 2;
    const Bias bias = opt.count("bias") ? parse_bias(opt["bias"]) : Bias::none;
    if (!opt.count("to")) throw ParseError("expand needs to=<diagram>");
    NDiagram next = ctx_->parse(opt["to"]);
    const NDiagram& d = *out_.current;
    if (next.dim != d.dim) throw ValidationError("expand: dimensions differ");
    const Zigzag& z = next.value.zigzag();
    if (h < 0 || len < 0 || h + len > z.length())
      throw ValidationError("contraction range outside the expanded diagram");
    Morphism f = contract_range(ctx_->level(d.dim - 1), z, h, h + len, bias);
    if (!(f.target() == d.value))
      throw ValidationError("expand: the diagram does not contract onto the current one");
    record(trim(text), ctx_->level(d.dim).identity(d.value), f, next.value, {});
  }

  void anticontract(Cursor& c, const std::string& text) {
    need_diagram();
    std::vector<int> path{c.integer()};
    while (c.accept(".")) path.push_back(c.integer());
    auto opt = options(c);
    const int pick = opt.count("pick") ? std::stoi(opt["pick"]) : options_.pick;
    const int bound = opt.count("bound") ? std::stoi(opt["bound"]) : options_.bound;
    if (!opt.count("sink")) throw ParseError("anticontract needs sink=[...]");

    const NDiagram& d = *out_.current;
    // zigzags along the path, outermost first
    std::vector<const Zigzag*> chain{&d.value.zigzag()};
    for (std::size_t t = 0; t < path.size(); ++t) {
      const Zigzag& z = *chain.back();
      if (path[t] < 0 || path[t] >= z.length())
        throw ValidationError("path component " + std::to_string(path[t]) + " out of range");
      if (t + 1 < path.size()) {
        if (!z.singular[path[t]].is_zigzag())
          throw ValidationError("path goes below dimension 0");
        chain.push_back(&z.singular[path[t]].zigzag());
      }
    }
    const int inner_dim = d.dim + 1 - static_cast<int>(path.size());  // of chain.back()
    const Zigzag& inner = *chain.back();
    const int k = path.back();
    const Object& apex = inner.singular[k];

    AnticontractionRequest req{restrict(inner, k, k + 1), {}, bound};
    req.max_results = static_cast<std::size_t>(pick) + 1;
    Cursor sc(opt["sink"]);
    sc.expect("[");
    do {
      std::string name = sc.identifier();
      auto it = names_.find(name);
      if (it == names_.end()) throw ParseError("unknown diagram name '" + name + "'");
      sc.expect(":");
      MapAst ast = parse_map_ast(sc);
      req.sink.push_back(build_map(*ctx_, ast, it->second.value, apex, inner_dim - 1));
    } while (sc.accept(","));
    sc.expect("]");
    if (!sc.at_end()) sc.fail("trailing input after sink");

    const Category& base = ctx_->level(inner_dim - 1);
    Morphism local = acl::anticontract(base, req, pick);
    TraceEntry entry;
    entry.pick = pick;
    entry.round_trip = !contraction_round_trip(base, local).has_value();
    if (!entry.round_trip) throw ValidationError("anticontraction does not contract back");
    Morphism a = splice_map(base, inner, k, local);
    for (int t = static_cast<int>(path.size()) - 2; t >= 0; --t) {
      const int dim_t = d.dim - t;  // dimension of chain[t]
      auto r = recursive_anticontract(ctx_->level(dim_t - 1), *chain[t], path[t], a, bound);
      entry.recursive_steps.push_back(to_string(r.step));
      a = r.map;
    }
    const Category& top = ctx_->level(d.dim);
    Object next = a.source();
    record(trim(text), top.identity(d.value), a, next, std::move(entry));
  }

  static std::string trim(const std::string& s) {
    std::string out;
    bool space = false;
    for (char ch : s) {
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        space = !out.empty();
        continue;
      }
      if (space) out += ' ';
      space = false;
      out += ch;
    }
    return out;
  }

  const ScriptOptions& options_;
  ScriptResult& out_;
  std::shared_ptr<const Signature> sig_;
  std::optional<DiagramContext> ctx_;
  std::map<std::string, NDiagram> names_;
};

}  // namespace

ScriptResult run_script(std::string_view text, const ScriptOptions& options) {
  ScriptResult out;
  Runner runner(options, out);
  int line = 0;
  try {
    for (const auto& [start, stmt] : statements(text)) {
      line = start;
      runner.statement(stmt);
    }
    if (!out.current) throw ParseError("script has no diagram");
  } catch (const ParseError& e) {
    out.status = StepStatus::parse_failed;
    out.error = "line " + std::to_string(line) + ": " + e.what();
  } catch (const CapabilityMissing& e) {
    out.status = StepStatus::capability_missing;
    out.error = "line " + std::to_string(line) + ": " + e.what();
  } catch (const Error& e) {
    out.status = StepStatus::validation_failed;
    out.error = "line " + std::to_string(line) + " (step " +
                std::to_string(out.trace.size() + 1) + "): " + e.what();
  }
  return out;
}

}  // namespace acl
