// Command-line front end: factorize arrows, verify laws, solve liftings
// and tabulate tower sizes for a generating set given as JSON.
//
// Exit codes: 0 success, 1 failed check or internal error, 2 unreadable
// input, 3 size cap exceeded, 4 no stabilization, 5 stage out of range.
// The NWFS_CAP environment variable overrides the default size cap.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nwfs/nwfs.hpp>

using namespace nwfs;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::uint64_t cap_from_env() {
  const char* v = std::getenv("NWFS_CAP");
  if (!v) return kDefaultCap;
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw ParseError("NWFS_CAP must be a positive integer");
  }
  if (v[pos] != '\0' || n == 0)
    throw ParseError("NWFS_CAP must be a positive integer");
  return n;
}

// Keeps the sequence alive next to the stage handles cut from it.
struct StagePick {
  std::shared_ptr<FreeSequence> seq;
  std::shared_ptr<const FreeSequence> conv_seq;
  StagePtr stage;
};

StagePick pick_stage(GeneratingSet gens, const std::vector<Arrow>& corpus,
                     bool converged, std::size_t stage_n,
                     std::size_t max_stage, std::uint64_t cap) {
  StagePick out;
  if (converged) {
    ConvergedResult res =
        make_converged(std::move(gens), corpus, max_stage, cap);
    out.conv_seq = res.seq;
    out.stage = res.stage;
    return out;
  }
  out.seq = std::make_shared<FreeSequence>(std::move(gens), max_stage, cap);
  out.stage = out.seq->stage(stage_n);
  return out;
}

int cmd_factorize(const std::string& gens_path, const std::string& arrow_path,
                  bool converged, std::size_t stage_n, std::size_t max_stage) {
  GeneratingSet gens = genset_from_json(load_json(gens_path));
  Arrow f = arrow_from_json(load_json(arrow_path));
  StagePick sp = pick_stage(std::move(gens), {f}, converged, stage_n,
                            max_stage, cap_from_env());
  const Factorization& fc = sp.stage->factor(f);
  json out{{"lambda", to_json(fc.lambda)},
           {"mid", to_json(fc.mid)},
           {"rho", to_json(fc.rho)}};
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_laws(const std::string& gens_path, const std::string& arrows_path,
             bool converged, std::size_t stage_n, std::size_t max_stage) {
  GeneratingSet gens = genset_from_json(load_json(gens_path));
  json ja = load_json(arrows_path);
  if (!ja.is_array()) throw ParseError(arrows_path + ": expected an array");
  std::vector<Arrow> arrows;
  for (const auto& item : ja) arrows.push_back(arrow_from_json(item));
  std::uint64_t cap = cap_from_env();
  StagePick sp = pick_stage(std::move(gens), arrows, converged, stage_n,
                            max_stage, cap);
  LawReport rep = check_stage(*sp.stage, make_corpus(arrows, cap));
  bool ok = true;
  for (const auto& law : rep.laws) {
    std::printf("%s %s checked=%zu%s%s\n", law.law.c_str(),
                law.pass ? "PASS" : "FAIL", law.checked,
                law.witness.empty() ? "" : " witness=",
                law.witness.c_str());
    ok = ok && law.pass;
  }
  return ok ? 0 : 1;
}

int cmd_lift(const std::string& gens_path, const std::string& lmap_path,
             const std::string& rmap_path, const std::string& square_path,
             bool converged, std::size_t stage_n, std::size_t max_stage) {
  GeneratingSet gens = genset_from_json(load_json(gens_path));
  json jl = load_json(lmap_path), jr = load_json(rmap_path);
  Arrow lf, rg;
  BaseMorphism s, p;
  try {
    lf = arrow_from_json(jl.at("arrow"));
    s = morphism_from_json(jl.at("s"));
    rg = arrow_from_json(jr.at("arrow"));
    p = morphism_from_json(jr.at("p"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("structure file: ") + e.what());
  }
  Square sq = square_from_json(load_json(square_path));
  StagePick sp = pick_stage(std::move(gens), {lf, rg}, converged, stage_n,
                            max_stage, cap_from_env());
  LMapStructure lm{sp.stage->token(), lf, s};
  RMapStructure rm{sp.stage->token(), rg, p};
  for (const auto& law : check_lmap(sp.stage, lm).laws)
    if (!law.pass) {
      std::fprintf(stderr, "left structure fails %s\n", law.law.c_str());
      return 1;
    }
  for (const auto& law : check_rmap(sp.stage, rm).laws)
    if (!law.pass) {
      std::fprintf(stderr, "right structure fails %s\n", law.law.c_str());
      return 1;
    }
  BaseMorphism j = solve_lifting(sp.stage, lm, rm, sq);
  std::printf("%s\n", json{{"filler", to_json(j)}}.dump(2).c_str());
  return 0;
}

int cmd_size_report(const std::string& gens_path,
                    const std::string& arrow_path, std::size_t upto) {
  GeneratingSet gens = genset_from_json(load_json(gens_path));
  Arrow f = arrow_from_json(load_json(arrow_path));
  std::uint64_t cap = cap_from_env();
  FreeSequence seq(std::move(gens), upto, cap);
  std::vector<std::uint64_t> naive =
      naive_stage_sizes(*seq.one_step(), f, upto);
  std::printf("stage,naive,coequalized\n");
  for (std::size_t n = 1; n <= upto; ++n)
    std::printf("%zu,%llu,%llu\n", n,
                static_cast<unsigned long long>(naive[n - 1]),
                static_cast<unsigned long long>(
                    object_size(seq.stage(n)->factor(f).mid)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factorization engine for finitely generated lifting systems"};
  app.require_subcommand(1);

  std::string gens_path, arrow_path, arrows_path;
  std::string lmap_path, rmap_path, square_path;
  bool converged = false;
  std::size_t stage_n = 1, max_stage = 6, upto = 3;

  auto add_stage_opts = [&](CLI::App* sub) {
    sub->add_option("--gens", gens_path, "generating set JSON")->required();
    sub->add_option("--stage", stage_n, "tower stage to use (default 1)");
    sub->add_flag("--converged", converged,
                  "use the stabilized stage instead of a fixed one");
    sub->add_option("--max-stage", max_stage,
                    "highest stage the tower may build (default 6)");
  };

  CLI::App* fac = app.add_subcommand("factorize", "factor one arrow");
  add_stage_opts(fac);
  fac->add_option("--arrow", arrow_path, "arrow JSON")->required();

  CLI::App* laws = app.add_subcommand("laws", "verify structure laws");
  add_stage_opts(laws);
  laws->add_option("--arrows", arrows_path, "JSON array of arrows")
      ->required();

  CLI::App* lift = app.add_subcommand("lift", "solve one lifting square");
  add_stage_opts(lift);
  lift->add_option("--lmap", lmap_path, "left structure JSON")->required();
  lift->add_option("--rmap", rmap_path, "right structure JSON")->required();
  lift->add_option("--square", square_path, "square JSON")->required();

  CLI::App* sizes =
      app.add_subcommand("size-report", "naive versus coequalized sizes");
  sizes->add_option("--gens", gens_path, "generating set JSON")->required();
  sizes->add_option("--arrow", arrow_path, "arrow JSON")->required();
  sizes->add_option("--upto", upto, "stages to tabulate (default 3)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fac->parsed())
      return cmd_factorize(gens_path, arrow_path, converged, stage_n,
                           max_stage);
    if (laws->parsed())
      return cmd_laws(gens_path, arrows_path, converged, stage_n, max_stage);
    if (lift->parsed())
      return cmd_lift(gens_path, lmap_path, rmap_path, square_path, converged,
                      stage_n, max_stage);
    if (sizes->parsed()) return cmd_size_report(gens_path, arrow_path, upto);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NotConverged& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const StageMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
