// polyframe: frame inspection, PL classification, reduction and realization.
#include <polyframe/config.hpp>
#include <polyframe/error.hpp>
#include <polyframe/formula.hpp>
#include <polyframe/frames.hpp>
#include <polyframe/io.hpp>
#include <polyframe/realization.hpp>
#include <polyframe/reduction.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

namespace fs = std::filesystem;
using namespace polyframe;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Input {
  Poset frame;
  std::optional<SawedTree> sawed;
  nlohmann::json raw;
};

// A frame argument is a JSON file or the name of a builtin frame.
Input load_input(const std::string& arg) {
  if (fs::exists(arg)) {
    auto j = io::read_json_file(arg);
    if (io::looks_like_sawed_tree(j)) {
      auto st = io::sawed_tree_from_json(j);
      Poset p = st.frame();
      return {std::move(p), std::move(st), std::move(j)};
    }
    return {io::frame_from_json(j), std::nullopt, std::move(j)};
  }
  try {
    return {builtin_frame(arg), std::nullopt, {}};
  } catch (const PreconditionError&) {
    throw FormatError(fmt::format("'{}' is neither a readable file nor a builtin frame ({})", arg,
                                  fmt::join(builtin_frame_names(), ", ")));
  }
}

std::string set_names(const Poset& p, const ElementSet& s) {
  std::vector<std::string> out;
  for (auto x : members(s)) out.push_back(p.name(x));
  return fmt::format("{{{}}}", fmt::join(out, ", "));
}

std::string id_names(const Poset& p, const std::vector<ElementId>& ids) {
  std::vector<std::string> out;
  for (auto x : ids) out.push_back(p.name(x));
  return fmt::format("[{}]", fmt::join(out, ", "));
}

int cmd_frame_info(const std::string& arg) {
  auto in = load_input(arg);
  const auto& p = in.frame;
  fmt::print("elements: {} {}\n", p.size(), id_names(p, [&] {
               std::vector<ElementId> all(p.size());
               for (ElementId x = 0; x < p.size(); ++x) all[x] = x;
               return all;
             }()));
  if (p.empty()) return kPass;
  fmt::print("height: {}\n", p.height());
  auto root = p.root();
  fmt::print("rooted: {}{}\n", root ? "yes" : "no", root ? " (" + p.name(*root) + ")" : "");
  fmt::print("tops: {} {}\n", p.tops().size(), id_names(p, p.tops()));
  auto comps = p.components();
  fmt::print("components: {}\n", comps.size());
  for (const auto& c : comps) fmt::print("  {}\n", set_names(p, c));
  if (in.sawed) fmt::print("sawed tree: saws {}\n", id_names(p, in.sawed->saw_nodes()));
  return kPass;
}

int cmd_frame_check(const std::string& arg, const std::string& formula, const std::string& logic,
                    std::optional<int> n, const Config& cfg) {
  auto in = load_input(arg);
  const auto& p = in.frame;
  if (!formula.empty()) {
    auto f = parse_formula(formula);
    auto result = frame_validates(p, f, cfg.carrier_cap);
    if (result.valid()) {
      fmt::print("valid: {}\n", to_string(f));
      return kPass;
    }
    fmt::print("refuted: {}\n{}\n", to_string(f), describe(p, *result.refutation));
    return kFail;
  }
  if (logic == "pl") {
    auto r = satisfies_pl(p, n);
    fmt::print("PL{}: {}\n", n ? std::to_string(*n) : "", describe(p, r));
    if (!r.pass()) fmt::print("witness: ({}, {})\n", clause_name(r.clause), p.name(r.witness));
    return r.pass() ? kPass : kFail;
  }
  if (logic == "bd") {
    if (!n) throw CLI::ValidationError("--logic bd requires --n");
    bool ok = satisfies_bd(p, *n);
    fmt::print("BD{}: {} (height {})\n", *n, ok ? "pass" : "fail", p.empty() ? -1 : p.height());
    return ok ? kPass : kFail;
  }
  throw CLI::ValidationError("frame check needs --formula or --logic pl|bd");
}

fs::path with_suffix(const fs::path& out, const std::string& suffix) {
  auto stem = out;
  stem.replace_extension();
  return fs::path(stem.string() + suffix);
}

int cmd_reduce(const std::string& arg, const std::string& out) {
  auto in = load_input(arg);
  const auto& p = in.frame;
  if (p.empty() || !p.is_rooted()) {
    fmt::print(stderr, "error: reduction needs a rooted frame\n");
    return kUsage;
  }
  auto pl = satisfies_pl(p);
  if (!pl.pass()) {
    fmt::print("not a PL frame: {}\nwitness: ({}, {})\n", describe(p, pl), clause_name(pl.clause),
               p.name(pl.witness));
    return kFail;
  }
  if (p.height() < 2) {
    fmt::print(stderr, "error: reduction needs height >= 2; use realize-low-height for height <= 1\n");
    return kUsage;
  }
  // A sawed tree is its own reduction.
  auto red = in.sawed ? Reduction{*in.sawed, identity_map(p)} : reduce_to_sawed_tree(p);
  auto check = is_p_morphism(red.map);
  if (!check.ok() || !is_surjective(red.map)) {
    fmt::print("reduction failed verification: {}\n", describe(red.map, check));
    return kFail;
  }
  fmt::print("sawed tree: {} elements, height {}, {} saws\n", red.tree.frame().size(), red.tree.height(),
             red.tree.saw_nodes().size());
  if (!out.empty()) {
    io::write_text_file(out, io::sawed_tree_to_json(red.tree).dump(2) + "\n");
    auto map_path = with_suffix(out, ".map.json");
    io::write_text_file(map_path, io::poset_map_to_json(red.map).dump(2) + "\n");
    fmt::print("wrote {} and {}\n", out, map_path.string());
  } else {
    fmt::print("{}\n", io::sawed_tree_to_json(red.tree).dump(2));
  }
  return kPass;
}

std::string export_text(const ConvexRealization& r, const std::string& format, const Config& cfg) {
  if (format == "off") return io::realization_off(r, cfg.digits);
  if (format == "json") return io::projected_json(r, cfg.digits).dump(2) + "\n";
  if (format == "dot") return io::hasse_dot(r.frame);
  throw CLI::ValidationError("unknown export format '" + format + "'");
}

int write_export(const ConvexRealization& r, const std::string& format, const std::string& path,
                 const Config& cfg) {
  auto text = export_text(r, format, cfg);
  if (path.empty()) {
    std::cout << text;
  } else {
    io::write_text_file(path, text);
    fmt::print("wrote {}\n", path);
  }
  return kPass;
}

int cmd_realize(const std::string& arg, const std::string& out, const std::string& format, bool via_reduction,
                bool saw, const Config& cfg) {
  auto in = load_input(arg);
  if (!in.frame.empty() && in.frame.height() < 2 && !saw) {
    fmt::print(stderr, "error: height {} frames have no sawed-tree realization; use realize-low-height\n",
               in.frame.height());
    return kUsage;
  }
  std::optional<SawedTree> tree = in.sawed;
  if (!tree && saw) {
    PlaneTree pt{in.frame, in.frame.tops()};
    if (in.raw.is_object() && in.raw.contains("tops_order")) {
      pt.tops_order.clear();
      for (const auto& t : in.raw["tops_order"]) pt.tops_order.push_back(in.frame.at(t.get<std::string>()));
    }
    pt.validate();
    tree = build_sawed_tree(pt);
  }
  if (!tree && via_reduction) {
    auto pl = satisfies_pl(in.frame);
    if (!pl.pass()) {
      fmt::print("not a PL frame: {}\n", describe(in.frame, pl));
      return kFail;
    }
    tree = reduce_to_sawed_tree(in.frame).tree;
  }
  if (!tree) {
    fmt::print(stderr, "error: input is not a sawed tree; pass --via-reduction or --saw\n");
    return kUsage;
  }
  auto r = realize_sawed_tree(*tree);
  fmt::print("realization: n = {}, {} vertices, {} simplices, {} saw cells\n", r.n, r.complex.vertices().size(),
             r.complex.size(), r.saw_cells.size());
  if (!out.empty()) {
    io::write_text_file(out, io::realization_to_json(r).dump(2) + "\n");
    fmt::print("wrote {}\n", out);
  }
  if (!format.empty()) {
    std::string ext = format == "json" ? ".projected.json" : "." + format;
    std::string path = out.empty() ? std::string() : with_suffix(out, ext).string();
    return write_export(r, format, path, cfg);
  }
  return kPass;
}

int cmd_realize_low(const std::string& arg) {
  auto in = load_input(arg);
  auto ir = realize_low_height(in.frame);
  for (const auto& c : ir.cells) fmt::print("{} -> {}\n", to_string(c.span), in.frame.name(c.label));
  std::string reason;
  bool ok = ir.verify(&reason);
  fmt::print("verify: {}{}\n", ok ? "pass" : "fail", reason.empty() ? "" : " (" + reason + ")");
  return ok ? kPass : kFail;
}

int cmd_verify(const std::string& path, const Config& cfg) {
  auto r = io::realization_from_json(io::read_json_file(path));
  VerifyOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  auto report = verify_realization(r, opts);
  fmt::print("{}", report.to_string());
  return report.pass() ? kPass : kFail;
}

int cmd_export(const std::string& path, const std::string& format, const std::string& out, const Config& cfg) {
  auto j = io::read_json_file(path);
  if (j.contains("saw_cells")) return write_export(io::realization_from_json(j), format, out, cfg);
  auto in = load_input(path);
  std::string text;
  if (format == "dot") {
    text = in.sawed ? io::drawing_dot(in.frame, plane_drawing(*in.sawed)) : io::hasse_dot(in.frame);
  } else if (format == "json") {
    text = (in.sawed ? io::sawed_tree_to_json(*in.sawed) : io::frame_to_json(in.frame)).dump(2) + "\n";
  } else {
    throw CLI::ValidationError("frames export as dot or json only");
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_text_file(out, text);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral semantics toolkit: PL frames, sawed trees and convex realizations"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--seed", cfg.seed, "Seed for every randomised step")->capture_default_str();
  app.add_option("--cap", cfg.carrier_cap, "Maximum number of upsets enumerated per frame")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Random sample points used by verify")->capture_default_str();
  app.add_option("--digits", cfg.digits, "Decimal digits in approximate exports")->capture_default_str();

  std::string frame_arg, out, formula, logic, format, path;
  std::optional<int> n;
  bool via_reduction = false, saw = false;
  int rc = kPass;

  auto* frame = app.add_subcommand("frame", "Inspect or check a frame");
  frame->require_subcommand(1);
  auto* info = frame->add_subcommand("info", "Elements, height, rootedness, tops and components");
  info->add_option("frame", frame_arg, "Frame JSON file or builtin name")->required();
  auto* check = frame->add_subcommand("check", "Check a formula, PL_n or BD_n on a frame");
  check->add_option("frame", frame_arg, "Frame JSON file or builtin name")->required();
  auto* formula_opt = check->add_option("--formula", formula, "Formula in ASCII syntax");
  check->add_option("--logic", logic, "pl or bd")->check(CLI::IsMember({"pl", "bd"}))->excludes(formula_opt);
  check->add_option("--n", n, "Height bound");
  auto* dot = frame->add_subcommand("dot", "Hasse diagram in DOT");
  dot->add_option("frame", frame_arg, "Frame JSON file or builtin name")->required();

  auto* reduce = app.add_subcommand("reduce", "Reduce a rooted PL frame to a sawed tree");
  reduce->add_option("frame", frame_arg, "Frame JSON file or builtin name")->required();
  reduce->add_option("--out", out, "Sawed-tree JSON; the map goes to <stem>.map.json");

  auto* realize = app.add_subcommand("realize", "Convex realization of a sawed tree");
  realize->add_option("input", frame_arg, "Sawed-tree JSON, frame JSON or builtin name")->required();
  realize->add_option("--out", out, "Realization JSON");
  realize->add_option("--export", format, "Also write an export: off, json or dot")
      ->check(CLI::IsMember({"off", "json", "dot"}));
  realize->add_flag("--via-reduction", via_reduction, "Reduce a PL frame first");
  realize->add_flag("--saw", saw, "Treat the input as a plane tree and saw it");

  auto* low = app.add_subcommand("realize-low-height", "Interval realization of a height <= 1 frame");
  low->add_option("frame", frame_arg, "Frame JSON file or builtin name")->required();

  auto* verify = app.add_subcommand("verify", "Run all realization checks");
  verify->add_option("realization", path, "Realization JSON")->required();

  auto* exp = app.add_subcommand("export", "Export a realization or frame");
  exp->add_option("input", path, "Realization or frame JSON")->required();
  exp->add_option("--format", format, "off, json or dot")->required()->check(CLI::IsMember({"off", "json", "dot"}));
  exp->add_option("--out", out, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*info) rc = cmd_frame_info(frame_arg);
    else if (*check) rc = cmd_frame_check(frame_arg, formula, logic, n, cfg);
    else if (*dot) std::cout << io::hasse_dot(load_input(frame_arg).frame);
    else if (*reduce) rc = cmd_reduce(frame_arg, out);
    else if (*realize) rc = cmd_realize(frame_arg, out, format, via_reduction, saw, cfg);
    else if (*low) rc = cmd_realize_low(frame_arg);
    else if (*verify) rc = cmd_verify(path, cfg);
    else if (*exp) rc = cmd_export(path, format, out, cfg);
  } catch (const CLI::ValidationError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsage;
  } catch (const InvariantError& e) {
    fmt::print(stderr, "verification failed: {}\n", e.what());
    return kFail;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  }
  return rc;
}
