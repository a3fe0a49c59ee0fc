#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "equipkit/equipkit.hpp"

namespace equipkit::cli {

namespace {

namespace fs = std::filesystem;

Site site_for(const json& j, const RunConfig& cfg, Site fallback) {
  std::optional<Site> given = cfg.site ? std::optional<Site>(parse_site(*cfg.site)) : std::nullopt;
  if (j.is_object() && j.contains("site")) {
    Site in = parse_site(j.at("site").get<std::string>());
    if (given && *given != in)
      throw Error(ErrorCode::ValidationError, std::string("input is for site '") + to_string(in) + "' but --site is '" +
                                                  to_string(*given) + "'");
    return in;
  }
  return given ? *given : fallback;
}

json provenance(const RunConfig& cfg, Site site, std::vector<std::string> ops) {
  return {{"site", to_string(site)},
          {"operations", ops},
          {"dim_bound", cfg.dim_bound},
          {"budget", cfg.budget},
          {"iso_budget", cfg.iso_budget}};
}

json describe_sset(const SSetPtr& x) {
  return {{"simplices", SSetSite::describe(x)}, {"homology", homology_string(homology(*x))}};
}

template <class S>
json describe(const typename S::Obj& x) {
  if constexpr (std::is_same_v<S, SSetSite>) return describe_sset(x);
  else return {{"objects", x->num_objects()}, {"morphisms", x->num_morphisms()}};
}

/// Runs `fn` with the site type matching `site`; the cospan site is refused.
template <class Fn>
json on_site(Site site, const char* what, Fn&& fn) {
  switch (site) {
    case Site::Cat: return fn(CatSite{});
    case Site::SSet: return fn(SSetSite{});
    case Site::Cospan: break;
  }
  throw Error(ErrorCode::ValidationError, std::string(what) + " is not available on the cospan site");
}

Outcome fail_with(const Error& e, int code, json report = json::object()) {
  report["status"] = "fail";
  report["error"] = e.to_json();
  return {code, report};
}

int code_of(const Error& e, int otherwise) { return is_budget_error(e.code()) ? kBudgetExceeded : otherwise; }

// ---- construct ------------------------------------------------------------------

json construct_impl(const std::string& kind, const std::vector<std::string>& inputs, const RunConfig& cfg) {
  auto need = [&](size_t n) {
    if (inputs.size() != n)
      throw Error(ErrorCode::ValidationError, "construct " + kind + " takes " + std::to_string(n) + " input file(s)");
  };
  if (kind == "tensor") {
    need(2);
    auto u = share(profunctor_from_json(read_json_file(inputs[0])));
    auto v = share(profunctor_from_json(read_json_file(inputs[1])));
    auto t = tensor(u, v);
    return {{"result", to_json(*t.prof)},
            {"elements", t.prof->size()},
            {"provenance", provenance(cfg, Site::Cat, {"tensor"})}};
  }
  need(1);
  auto j = read_json_file(inputs[0]);
  if (kind == "homology") {
    auto x = sset_from_json(j);
    auto h = homology(x);
    return {{"result", to_json(h)}, {"homology", homology_string(h)}, {"provenance", provenance(cfg, Site::SSet, {"homology"})}};
  }
  if (kind == "collage") {
    auto u = profunctor_from_json(j);
    auto c = collage_of(u);
    json part = json::object();
    for (int o = 0; o < c.carrier->num_objects(); ++o) part[c.carrier->objects[o]] = c.p.ob[o];
    return {{"result", to_json(*c.carrier)}, {"part", part}, {"provenance", provenance(cfg, Site::Cat, {"collage_of"})}};
  }
  if (kind == "gro") {
    auto F = to_cat_diagram(diagram_from_json<CatSite>(j));
    auto g = grothendieck(F);
    return {{"result", to_json(*g.cat)},
            {"summary", describe<CatSite>(g.cat)},
            {"provenance", provenance(cfg, Site::Cat, {"grothendieck"})}};
  }
  if (kind == "companion") {
    if (!j.contains("maps")) {
      auto src = share(category_from_json(detail::get<json>(j, "src", "functor file")));
      auto dst = share(category_from_json(detail::get<json>(j, "dst", "functor file")));
      auto F = functor_from_json(detail::get<json>(j, "functor", "functor file"), src, dst);
      auto u = companion(F);
      return {{"result", to_json(u)}, {"elements", u.size()}, {"provenance", provenance(cfg, Site::Cat, {"companion"})}};
    }
    Site site = site_for(j, cfg, Site::SSet);
    return on_site(site, "companion_simplex", [&](auto tag) -> json {
      using S = decltype(tag);
      auto c = chain_from_json<S>(j);
      auto y = companion_simplex(c, cfg.budget).y;
      return {{"result", to_json(y)},
              {"summary", describe<S>(y.carrier)},
              {"provenance", provenance(cfg, site, {"companion_simplex"})}};
    });
  }
  if (kind == "cotab") {
    Site site = site_for(j, cfg, Site::SSet);
    return on_site(site, "cotab", [&](auto tag) -> json {
      using S = decltype(tag);
      auto x = slice_from_json<S>(j);
      auto c = cotabulator(x);
      return {{"result", site_carrier_to_json(c.obj)},
              {"cylinder", site_carrier_to_json(c.cylinder.obj())},
              {"eta", site_map_to_json(c.eta)},
              {"provenance", provenance(cfg, site, {"cotabulator"})}};
    });
  }
  if (kind == "dcolim" || kind == "hocolim") {
    Site site = site_for(j, cfg, Site::SSet);
    return on_site(site, kind.c_str(), [&](auto tag) -> json {
      using S = decltype(tag);
      auto F = diagram_from_json<S>(j);
      typename S::Obj obj;
      if (kind == "dcolim") obj = dcolim(companion_horizontal(F, cfg.dim_bound, cfg.budget), cfg.budget).obj;
      else obj = hocolim(F, cfg.dim_bound, cfg.budget).obj;
      return {{"result", site_carrier_to_json(obj)},
              {"summary", describe<S>(obj)},
              {"provenance", provenance(cfg, site, kind == "dcolim" ? std::vector<std::string>{"companion_horizontal", "dcolim"}
                                                                    : std::vector<std::string>{"staircase", "hocolim"})}};
    });
  }
  if (kind == "holim") {
    Site site = site_for(j, cfg, Site::SSet);
    if (site != Site::SSet) throw Error(ErrorCode::ValidationError, "holim is available on the sset site only");
    auto F = diagram_from_json<SSetSite>(j);
    auto h = holim(F, cfg.dim_bound, cfg.dim_bound, cfg.iso_budget);
    return {{"result", to_json(*h.obj)},
            {"truncated_at", h.bound},
            {"summary", describe_sset(h.obj)},
            {"provenance", provenance(cfg, site, {"right_companion_horizontal", "dlim"})}};
  }
  throw Error(ErrorCode::ValidationError, "unknown construction '" + kind + "'");
}

// ---- check ----------------------------------------------------------------------

/// A parsed check: running it yields the report and whether it passed.
using Runner = std::function<std::pair<bool, json>()>;

json ident_report(const IdentityReport& r) {
  return {{"identities_checked", r.checked}, {"failures", r.failures}};
}

Runner axioms_check(const json& j, const RunConfig& cfg) {
  // everything here is the check itself: a validation error is a failed check
  return [j, cfg]() -> std::pair<bool, json> {
    std::string what;
    if (j.contains("cells")) {
      sset_from_json(j);
      what = "simplicial set";
    } else if (j.contains("elements")) {
      profunctor_from_json(j);
      what = "profunctor";
    } else if (j.contains("index")) {
      Site site = site_for(j, cfg, Site::Cat);
      on_site(site, "diagram", [&](auto tag) -> json {
        diagram_from_json<decltype(tag)>(j);
        return {};
      });
      what = "diagram";
    } else if (j.contains("level")) {
      slice_object_from_json(j, site_for(j, cfg, Site::SSet));
      what = "slice object";
    } else {
      category_from_json(j);
      what = "category";
    }
    return {true, {{"validated", what}}};
  };
}

Runner identities_check(const json& j, const RunConfig& cfg) {
  auto x = slice_object_from_json(j, site_for(j, cfg, Site::SSet));
  long ib = cfg.iso_budget;
  return [x, ib]() -> std::pair<bool, json> {
    auto r = check_simplicial_identities(x, ib);
    return {r.ok(), ident_report(r)};
  };
}

Runner equipment_check(const json& j, const RunConfig& cfg) {
  Site site = site_for(j, cfg, Site::SSet);
  auto xj = detail::get<json>(j, "x", "equipment input");
  auto faces = detail::get<json>(j, "faces", "equipment input");
  auto maps = detail::get<json>(j, "maps", "equipment input");
  if (site == Site::Cospan) {
    auto x = cospan_from_json(xj);
    std::vector<CospanSlice> ys;
    std::vector<CospanMorphism> fs;
    for (auto& y : faces) ys.push_back(cospan_from_json(y));
    for (auto& f : maps) fs.push_back(cospan_morphism_from_json(f));
    return [x, ys, fs]() -> std::pair<bool, json> {
      auto e = equipment_extend(x, ys, fs);
      bool ok = true;
      for (int i = 0; i <= x.n && x.n > 0; ++i) ok = ok && face_cospan(e.y, i) == ys[i];
      return {ok, {{"result", to_json(e.y)}, {"faces_match", ok}}};
    };
  }
  json out;
  Runner r;
  on_site(site, "equipment", [&](auto tag) -> json {
    using S = decltype(tag);
    auto x = slice_from_json<S>(xj);
    std::vector<Slice<S>> ys;
    std::vector<typename S::Map> fs;
    for (auto& y : faces) ys.push_back(slice_from_json<S>(y));
    if (maps.size() != ys.size()) throw Error(ErrorCode::ParseError, "equipment input: one map per face");
    for (size_t i = 0; i < ys.size(); ++i) {
      if (x.n == 0) throw Error(ErrorCode::ValidationError, "equipment input: level-0 objects have no boundary");
      auto d = face_slice(x, static_cast<int>(i)).obj;
      fs.push_back(map_from_json<S>(maps[i], d.carrier, ys[i].carrier));
    }
    long b = cfg.budget;
    r = [x, ys, fs, b]() -> std::pair<bool, json> {
      auto e = equipment_extend(x, ys, fs, "e:", b);
      bool ok = true;
      for (int i = 0; i <= x.n; ++i) ok = ok && same_by_ids(face_slice(e.y, i).obj, ys[i]);
      return {ok, {{"result", to_json(e.y)}, {"faces_match", ok}, {"summary", describe<S>(e.y.carrier)}}};
    };
    return {};
  });
  return r;
}

Runner thm1_runner(const json& j, const RunConfig& cfg) {
  if (site_for(j, cfg, Site::Cat) != Site::Cat) throw Error(ErrorCode::ValidationError, "thm1 runs on the cat site");
  auto F = to_cat_diagram(diagram_from_json<CatSite>(j));
  long ib = cfg.iso_budget;
  return [F, ib]() -> std::pair<bool, json> {
    auto r = thm1_check(F, ib);
    json iso = nullptr;
    if (r.iso) iso = to_json(r.iso->fwd);
    return {r.iso.has_value(), {{"lhs", to_json(*r.gro.cat)}, {"rhs", to_json(*r.dcolim.cat)}, {"iso", iso}}};
  };
}

Runner thm2_runner(const json& j, const RunConfig& cfg) {
  Site site = site_for(j, cfg, Site::SSet);
  Runner r;
  on_site(site, "thm2", [&](auto tag) -> json {
    using S = decltype(tag);
    auto F = diagram_from_json<S>(j);
    int db = cfg.dim_bound;
    long b = cfg.budget, ib = cfg.iso_budget;
    r = [F, db, b, ib]() -> std::pair<bool, json> {
      auto c = theorem2_check(F, db, b, ib);
      json iso = nullptr;
      if (c.iso) iso = site_map_to_json(c.iso->first);
      json rep{{"lhs", site_carrier_to_json(c.dcolim)},
               {"rhs", site_carrier_to_json(c.hocolim)},
               {"lhs_summary", describe<S>(c.dcolim)},
               {"rhs_summary", describe<S>(c.hocolim)},
               {"iso", iso}};
      if constexpr (std::is_same_v<S, SSetSite>) rep["homology"] = {homology_string(homology(*c.dcolim)), homology_string(homology(*c.hocolim))};
      return {c.isomorphic, rep};
    };
    return {};
  });
  return r;
}

Runner adjunction_runner(const json& j, const RunConfig& cfg) {
  if (site_for(j, cfg, Site::SSet) != Site::SSet) throw Error(ErrorCode::ValidationError, "adjunction runs on the sset site");
  auto x = share(sset_from_json(detail::get<json>(j, "x", "adjunction input")));
  auto y = share(sset_from_json(detail::get<json>(j, "y", "adjunction input")));
  int n = j.contains("n") ? j.at("n").get<int>() : cfg.dim_bound;
  if (n < 0) throw Error(ErrorCode::ValidationError, "adjunction input: n must be nonnegative");
  long ib = cfg.iso_budget;
  return [x, y, n, ib]() -> std::pair<bool, json> {
    bool ok = true;
    json levels = json::array();
    for (auto& e : ev_mapping_space<SSetSite>(x, y, n, ib)) {
      long t = tensor_hom_count(x, y, e.n, ib);
      bool lv = e.bijective() && e.faces_commute && e.degeneracies_commute && t == e.ev_count;
      ok = ok && lv;
      levels.push_back({{"n", e.n},
                        {"ev", e.ev_count},
                        {"direct", e.direct_count},
                        {"tensor_hom", t},
                        {"injective", e.injective},
                        {"faces_commute", e.faces_commute},
                        {"degeneracies_commute", e.degeneracies_commute}});
    }
    return {ok, {{"levels", levels}}};
  };
}

Runner lr_runner(const json& j, const RunConfig& cfg) {
  if (site_for(j, cfg, Site::SSet) != Site::SSet) throw Error(ErrorCode::ValidationError, "lr-companions runs on the sset site");
  auto c = chain_from_json<SSetSite>(j);
  int db = cfg.dim_bound;
  long ib = cfg.iso_budget;
  return [c, db, ib]() -> std::pair<bool, json> {
    auto r = lr_companions(c, db, ib, ib);
    // a comparison, not a law: both outcomes are reported as data
    return {true, {{"left", r.left}, {"right", r.right}, {"isomorphic", r.isomorphic}, {"truncated_at", r.bound}}};
  };
}

// ---- corpus ---------------------------------------------------------------------

void write_json(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::ValidationError, "cannot write '" + p.string() + "'");
  out << j.dump(2) << "\n";
}

std::string numbered(const std::string& stem, int k) {
  std::ostringstream s;
  s << stem << "_" << std::setw(3) << std::setfill('0') << k << ".json";
  return s.str();
}

}  // namespace

Outcome construct(const std::string& kind, const std::vector<std::string>& inputs, const RunConfig& cfg) {
  try {
    auto r = construct_impl(kind, inputs, cfg);
    r["status"] = "pass";
    return {kPass, r};
  } catch (const Error& e) {
    return fail_with(e, code_of(e, kInputError));
  } catch (const json::exception& e) {
    return fail_with(Error(ErrorCode::ParseError, e.what()), kInputError);
  }
}

Outcome check(const std::string& kind, const std::string& input, const RunConfig& cfg) {
  Runner run;
  json base{{"check", kind}};
  try {
    auto j = read_json_file(input);
    if (kind == "axioms") run = axioms_check(j, cfg);
    else if (kind == "simplicial-identities") run = identities_check(j, cfg);
    else if (kind == "equipment") run = equipment_check(j, cfg);
    else if (kind == "thm1") run = thm1_runner(j, cfg);
    else if (kind == "thm2") run = thm2_runner(j, cfg);
    else if (kind == "adjunction") run = adjunction_runner(j, cfg);
    else if (kind == "lr-companions") run = lr_runner(j, cfg);
    else throw Error(ErrorCode::ValidationError, "unknown check '" + kind + "'");
  } catch (const Error& e) {
    return fail_with(e, code_of(e, kInputError), base);
  } catch (const json::exception& e) {
    return fail_with(Error(ErrorCode::ParseError, e.what()), kInputError, base);
  }
  try {
    auto [ok, rep] = run();
    rep["check"] = kind;
    rep["status"] = ok ? "pass" : "fail";
    return {ok ? kPass : kCheckFailed, rep};
  } catch (const Error& e) {
    return fail_with(e, code_of(e, kCheckFailed), base);
  } catch (const json::exception& e) {
    return fail_with(Error(ErrorCode::ParseError, e.what()), kCheckFailed, base);
  }
}

Outcome generate_corpus(const std::string& dir, int size, const RunConfig& cfg) {
  if (size < 1 || size > 100) return fail_with(Error(ErrorCode::ValidationError, "corpus size must be within 1..100"), kInputError);
  try {
    corpus::Rng rng(cfg.seed);
    fs::path root(dir);
    std::vector<std::string> files;
    auto put = [&](const std::string& rel, const json& j) {
      write_json(root / rel, j);
      files.push_back(rel);
    };
    auto cats = corpus::cat_diagrams(rng, size);
    for (int k = 0; k < size; ++k) put(numbered("cat_diagrams/diagram", k), to_json(to_vertical(cats[k])));
    auto ssets = corpus::sset_diagrams(rng, size);
    for (int k = 0; k < size; ++k) put(numbered("sset_diagrams/diagram", k), to_json(ssets[k]));
    for (Site s : {Site::Cat, Site::SSet, Site::Cospan}) {
      auto xs = corpus::slice_objects(rng, s, size);
      for (int k = 0; k < size; ++k) put(numbered(std::string("slices/") + to_string(s), k), to_json(xs[k]));
    }
    auto us = corpus::profunctors(rng, size);
    for (int k = 0; k < size; ++k) put(numbered("profunctors/profunctor", k), to_json(*us[k]));
    auto pairs = corpus::sset_pairs(rng, size);
    for (int k = 0; k < size; ++k)
      put(numbered("pairs/pair", k), {{"site", "sset"}, {"x", to_json(*pairs[k].first)}, {"y", to_json(*pairs[k].second)}, {"n", cfg.dim_bound}});
    for (int k = 0; k < size; ++k) {
      int len = 1 + k % 3;
      put(numbered("chains/cat", k), to_json(corpus::random_cat_chain(rng, len)));
      put(numbered("chains/sset", k), to_json(corpus::random_sset_chain(rng, len)));
    }
    json manifest{{"seed", cfg.seed}, {"size", size}, {"files", files}};
    write_json(root / "manifest.json", manifest);
    return {kPass, {{"status", "pass"}, {"directory", dir}, {"files", files.size()}, {"seed", cfg.seed}}};
  } catch (const Error& e) {
    return fail_with(e, code_of(e, kInputError));
  }
}

namespace {

void print_text(std::ostream& out, const json& r) {
  out << r.value("status", "?");
  if (r.contains("check")) out << " " << r["check"].get<std::string>();
  out << "\n";
  for (auto& [k, v] : r.items()) {
    if (k == "status" || k == "check" || k == "result" || k == "lhs" || k == "rhs" || k == "provenance") continue;
    if (v.is_primitive()) out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    else if (v.is_object() && v.contains("message")) out << "  " << k << ": " << v["message"].get<std::string>() << "\n";
    else out << "  " << k << ": " << v.dump() << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite categories, simplicial sets and their equipments", "equipkit"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  std::string site;
  app.add_option("--site", site, "cat, sset or cospan (default: taken from the input)");
  app.add_option("--dim-bound", cfg.dim_bound, "nerve and truncation bound")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "colimit budget (coset definitions); EQUIPKIT_BUDGET overrides")->check(CLI::PositiveNumber);
  app.add_option("--iso-budget", cfg.iso_budget, "bound on isomorphism and map searches")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", cfg.out, "output file (corpus: directory)");
  app.add_option("--seed", cfg.seed, "corpus seed");

  std::string kind;
  std::vector<std::string> inputs;
  auto* cons = app.add_subcommand("construct", "build an object and print it");
  cons->add_option("kind", kind)->required()->check(
      CLI::IsMember({"gro", "collage", "tensor", "companion", "cotab", "dcolim", "hocolim", "holim", "homology"}));
  cons->add_option("inputs", inputs)->required();
  auto* chk = app.add_subcommand("check", "run a check; exit 1 when it fails");
  std::string input;
  chk->add_option("kind", kind)->required()->check(
      CLI::IsMember({"axioms", "simplicial-identities", "equipment", "thm1", "thm2", "adjunction", "lr-companions"}));
  chk->add_option("input", input)->required();
  auto* corp = app.add_subcommand("corpus", "generate the seeded test corpus");
  std::string action;
  int size = 10;
  corp->add_option("action", action)->required()->check(CLI::IsMember({"generate"}));
  corp->add_option("--size", size, "instances per family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  if (const char* env = std::getenv("EQUIPKIT_BUDGET")) {
    try {
      cfg.budget = std::stol(env);
    } catch (const std::exception&) {
      err << "EQUIPKIT_BUDGET is not a number\n";
      return kInputError;
    }
    if (cfg.budget <= 0) {
      err << "EQUIPKIT_BUDGET must be positive\n";
      return kInputError;
    }
  }
  if (!site.empty()) {
    try {
      parse_site(site);
    } catch (const Error& e) {
      out << e.to_json().dump(2) << "\n";
      return kInputError;
    }
    cfg.site = site;
  }

  Outcome o;
  if (*cons) o = construct(kind, inputs, cfg);
  else if (*chk) o = check(kind, input, cfg);
  else o = generate_corpus(cfg.out.empty() ? "corpus" : cfg.out, size, cfg);

  std::ostringstream body;
  if (cfg.format == "text") print_text(body, o.report);
  else body << o.report.dump(2) << "\n";
  if (o.report.contains("error")) err << o.report["error"]["message"].get<std::string>() << "\n";
  if (!cfg.out.empty() && !*corp) {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "cannot write '" << cfg.out << "'\n";
      return kInputError;
    }
    f << body.str();
  } else {
    out << body.str();
  }
  return o.code;
}

}  // namespace equipkit::cli
