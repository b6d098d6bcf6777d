#include "acl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "acl/anticolimit.hpp"
#include "acl/errors.hpp"
#include "acl/fincat.hpp"
#include "acl/script.hpp"
#include "acl/zigzag.hpp"

namespace acl {

namespace {

using Json = nlohmann::ordered_json;

CategoryPtr category_named(const std::string& name) {
  if (name == "set") return finset();
  if (name == "ord") return finord();
  throw CapabilityMissing("no literal syntax for category '" + name + "' (use set or ord)");
}

int parse_size(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit))
    throw ParseError("bad carrier size '" + s + "'");
  return std::stoi(s);
}

Sink parse_sink(const std::string& category, const std::vector<std::string>& legs) {
  if (legs.empty()) throw ParseError("a sink needs at least one leg");
  Sink sink;
  for (const auto& text : legs) sink.legs.push_back(parse_fin_map(category, text));
  sink.apex = sink.legs.front().target();
  for (const auto& l : sink.legs)
    if (!(l.target() == sink.apex)) throw ValidationError("sink legs have different targets");
  return sink;
}

std::string size_of(const Object& x) { return std::to_string(x.carrier().size); }

Json anticocone_json(const Anticocone& a, int index) {
  Json j;
  j["index"] = index;
  Json objects = Json::object();
  for (int e = 0; e < a.shape.size(); ++e)
    if (!a.shape.is_maximal(e)) objects[a.shape.name(e)] = a.extension.object(e).carrier().size;
  j["objects"] = objects;
  Json arrows = Json::array();
  for (auto [x, y] : a.shape.covering_pairs())
    arrows.push_back({{"from", a.shape.name(x)},
                      {"to", a.shape.name(y)},
                      {"map", digits(a.extension.arrow(x, y).images())}});
  j["arrows"] = arrows;
  return j;
}

void print_anticocone(std::ostream& out, const Anticocone& a, int index) {
  out << "#" << index << "\n";
  for (int e = 0; e < a.shape.size(); ++e)
    if (!a.shape.is_maximal(e))
      out << "  " << a.shape.name(e) << " = " << size_of(a.extension.object(e)) << "\n";
  for (auto [x, y] : a.shape.covering_pairs())
    out << "  " << a.shape.name(x) << " -> " << a.shape.name(y) << " : "
        << digits(a.extension.arrow(x, y).images()) << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Flags {
  int bound = -1;
  int pick = -1;
  std::string trace;
  std::string format = "text";
  int threads = 1;
};

int cmd_antipushout(const Flags& fl, const std::string& cat, const std::string& f,
                    const std::string& g, std::ostream& out) {
  auto c = category_named(cat);
  auto spans = antipushout(*c, parse_fin_map(cat, f), parse_fin_map(cat, g),
                           fl.bound < 0 ? 4 : fl.bound);
  const bool json = fl.format == "json";
  if (spans.empty() && !json) out << "none\n";
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (fl.pick >= 0 && static_cast<std::size_t>(fl.pick) != i) continue;
    const Span& s = spans[i];
    if (json)
      out << Json{{"index", i},
                  {"apex", s.apex.carrier().size},
                  {"left", digits(s.left.images())},
                  {"right", digits(s.right.images())}}
                 .dump()
          << "\n";
    else
      out << digits(s.left.images()) << " " << digits(s.right.images()) << "\n";
  }
  return 0;
}

int cmd_anticolimit(const Flags& fl, const std::string& mode, const std::string& cat,
                    const std::string& shape_text, const std::vector<std::string>& legs,
                    std::ostream& out) {
  auto c = category_named(cat);
  FinPoset shape = parse_poset(shape_text);
  Sink sink = parse_sink(cat, legs);
  if (sink.legs.size() != shape.maximal().size())
    throw ValidationError("the shape has " + std::to_string(shape.maximal().size()) +
                          " maximal elements but the sink has " +
                          std::to_string(sink.legs.size()) + " legs");
  const bool json = fl.format == "json";
  if (mode == "exists") {
    auto r = anticolimits_exist(*c, shape, sink, fl.bound < 0 ? 3 : fl.bound);
    if (json)
      out << Json{{"exists", r.exists}, {"decided", r.decided}, {"bound", r.bound}}.dump()
          << "\n";
    else
      out << (r.exists ? "exists" : "none")
          << (r.decided ? "" : " (up to bound " + std::to_string(r.bound) + ")") << "\n";
    return 0;
  }
  SearchLimits limits;
  if (fl.bound >= 0) limits.bound = fl.bound;
  auto all = enumerate_anticolimits(*c, shape, sink, limits);
  if (all.empty() && !json) out << "none\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (fl.pick >= 0 && static_cast<std::size_t>(fl.pick) != i) continue;
    if (json)
      out << anticocone_json(all[i], static_cast<int>(i)).dump() << "\n";
    else
      print_anticocone(out, all[i], static_cast<int>(i));
  }
  return 0;
}

int cmd_contract(const Flags& fl, const std::string& sig_text, const std::string& diagram,
                 const std::string& bias_text, std::ostream& out) {
  DiagramContext ctx(parse_signature(sig_text));
  NDiagram d = ctx.parse(diagram);
  if (d.dim == 0) throw ValidationError("only zigzags can be contracted");
  Bias bias = bias_text == "left" ? Bias::left : bias_text == "right" ? Bias::right : Bias::none;
  Morphism f = contraction(ctx.level(d.dim - 1), d.value.zigzag(), bias);
  if (fl.format == "json")
    out << Json{{"diagram", ctx.print(f.target())}, {"map", ctx.print_map(f)}}.dump() << "\n";
  else
    out << ctx.print(f.target()) << "\n" << ctx.print_map(f) << "\n";
  return 0;
}

int cmd_run(const Flags& fl, const std::string& path, std::ostream& out, std::ostream& err) {
  ScriptOptions opts;
  opts.bound = fl.bound;
  if (fl.pick >= 0) opts.pick = fl.pick;
  ScriptResult r = run_script(read_file(path), opts);
  if (!fl.trace.empty()) {
    std::ofstream t(fl.trace);
    if (!t) throw ValidationError("cannot write trace '" + fl.trace + "'");
    for (const auto& e : r.trace) t << e.to_json() << "\n";
  }
  std::string final_text;
  if (r.current) final_text = DiagramContext(r.signature).print(*r.current);
  if (fl.format == "json") {
    Json j{{"status", exit_code(r.status)}, {"steps", r.trace.size()}};
    j["diagram"] = r.current ? Json(final_text) : Json(nullptr);
    if (!r.error.empty()) j["error"] = r.error;
    out << j.dump() << "\n";
  } else if (r.current) {
    out << final_text << "\n";
  }
  if (r.status != StepStatus::ok) err << "error: " << r.error << "\n";
  return exit_code(r.status);
}

}  // namespace

Morphism parse_fin_map(const std::string& category, const std::string& text) {
  auto arrow = text.find("->");
  if (arrow == std::string::npos) throw ParseError("map '" + text + "' is not n->m:digits");
  auto colon = text.find(':', arrow);
  const int n = parse_size(text.substr(0, arrow));
  const int m = parse_size(text.substr(arrow + 2, colon == std::string::npos
                                                      ? std::string::npos
                                                      : colon - arrow - 2));
  std::vector<int> images =
      colon == std::string::npos ? std::vector<int>{} : parse_digits(text.substr(colon + 1));
  if (static_cast<int>(images.size()) != n)
    throw ValidationError("map '" + text + "' has " + std::to_string(images.size()) +
                          " images for " + std::to_string(n) + " points");
  if (category == "ord") return ord_map(n, m, std::move(images));
  auto f = Morphism::function(set_object(n), set_object(m), std::move(images));
  category_named(category)->check_morphism(f);
  return f;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anticolimits, zigzag diagrams and move scripts"};
  app.require_subcommand(1);
  Flags fl;
  app.add_option("--bound", fl.bound, "Size bound for enumeration");
  app.add_option("--pick", fl.pick, "Select one result by index");
  app.add_option("--trace", fl.trace, "Write the script trace as JSON lines");
  app.add_option("--format", fl.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", fl.threads, "Worker threads for enumeration")
      ->check(CLI::PositiveNumber);

  std::string mode, cat, shape, f, g, sig, diagram, bias = "none", path;
  std::vector<std::string> legs;

  auto* anti = app.add_subcommand("anticolimit", "Existence or enumeration of anticolimits");
  anti->add_option("mode", mode)->required()->check(CLI::IsMember({"exists", "enum"}));
  anti->add_option("category", cat)->required();
  anti->add_option("shape", shape, "poset { elems: [...]; le: [...] }")->required();
  anti->add_option("legs", legs, "Sink legs n->m:digits, one per maximal element")->required();

  auto* apo = app.add_subcommand("antipushout", "Antipushouts of a cospan");
  apo->add_option("category", cat)->required();
  apo->add_option("left", f)->required();
  apo->add_option("right", g)->required();

  auto* con = app.add_subcommand("contract", "Contract a zigzag diagram to length one");
  con->add_option("signature", sig, "x:0, alpha:2")->required();
  con->add_option("diagram", diagram)->required();
  con->add_option("--bias", bias)->check(CLI::IsMember({"none", "left", "right"}));

  auto* run = app.add_subcommand("run", "Replay a move script");
  run->add_option("script", path)->required();

  for (auto* sub : {anti, apo, con, run}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

#ifdef _OPENMP
  omp_set_num_threads(fl.threads);
#endif
  try {
    if (anti->parsed()) return cmd_anticolimit(fl, mode, cat, shape, legs, out);
    if (apo->parsed()) return cmd_antipushout(fl, cat, f, g, out);
    if (con->parsed()) return cmd_contract(fl, sig, diagram, bias, out);
    return cmd_run(fl, path, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityMissing& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace acl
