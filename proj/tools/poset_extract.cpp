// poset_extract: command-line front end for the extraction library.
//
// Exit codes: 0 success, 1 bad arguments, 2 unreadable/invalid input file,
// 3 instance rejected (too small / preconditions / degenerate), 4 ground
// mismatch between orders, 70 internal invariant failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdil/driver.hpp"
#include "mdil/errors.hpp"
#include "mdil/genlab.hpp"
#include "mdil/io.hpp"
#include "mdil/multiorder.hpp"
#include "mdil/poset.hpp"

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int write_data(const std::string& out_path, const std::string& data) {
  if (out_path.empty()) {
    std::cout << data;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw mdil::ParseError("cannot write output file: " + out_path);
  f << data;
  return 0;
}

struct FindArgs {
  std::string input, out;
  int k = 2;
  std::string profile = "thm1";
  std::string mode = "relaxed";
};

int run_find(const FindArgs& a) {
  mdil::Poset p = mdil::load_poset(a.input);
  bool strict = (a.mode == "strict");
  mdil::ExtractionResult er = (a.profile == "thm2") ? mdil::find_family_thm2(p, a.k, strict)
                                                    : mdil::find_family_thm1(p, a.k, strict);

  mdil::ResultPayload pay;
  if (er.branch == mdil::Branch::DescendingSetChain) {
    pay.kind = "set_chain";
    pay.direction = "descending";
  } else {
    pay.kind = "incomparable";
  }
  pay.sets = er.sets.sets;
  pay.l = er.ell;
  pay.gamma = er.gamma;
  pay.lambda = er.lambda;
  pay.guarantee = er.guaranteed_size;
  pay.achieved = er.achieved_size;

  std::cerr << "branch: "
            << (er.branch == mdil::Branch::DescendingSetChain ? "descending set chain"
                                                              : "totally incomparable")
            << "\n"
            << "sets: " << pay.sets.size() << "  smallest: " << er.achieved_size << "\n"
            << "l: " << er.ell << "  gamma: " << fmt(er.gamma) << "  lambda: " << fmt(er.lambda)
            << "\n";
  if (er.sparse_core_size > 0)
    std::cerr << "core: " << er.sparse_core_size << (er.used_dual ? " (dual)" : "") << "\n";
  std::cerr << "guarantee: " << (pay.guarantee ? fmt(*pay.guarantee) : std::string("none"))
            << "\n";
  return write_data(a.out, mdil::result_to_json(pay).dump() + "\n");
}

struct MultiArgs {
  std::vector<std::string> inputs;
  std::string out;
  int k = 2;
  std::string schedule = "practical";
};

int run_multi(const MultiArgs& a) {
  std::vector<mdil::Poset> orders;
  orders.reserve(a.inputs.size());
  for (const auto& path : a.inputs) orders.push_back(mdil::load_poset(path));
  long long n = orders[0].size();
  for (const auto& o : orders)
    if (o.size() != n) throw mdil::GroundMismatch("multi: orders differ in ground size");
  if (n < 3) throw mdil::InstanceTooSmall("level 1: ground must have at least 3 elements", 1);

  mdil::ScheduleMode mode = (a.schedule == "paper" ? mdil::ScheduleMode::Paper
                                                   : mdil::ScheduleMode::Practical);
  mdil::Schedule sched = mdil::build_schedule((int)orders.size(), a.k, n, mode);
  mdil::HomogeneousResult hr = mdil::find_homogeneous(orders, a.k, sched);

  mdil::ResultPayload pay;
  mdil::Relation last = hr.relations.back();
  if (last == mdil::Relation::Incomparable) {
    pay.kind = "incomparable";
  } else {
    pay.kind = "set_chain";
    pay.direction = mdil::relation_name(last);
  }
  pay.sets = hr.sets.sets;
  const mdil::LevelInfo& fin = hr.levels.back();
  pay.l = fin.ell;
  pay.gamma = fin.gamma;
  pay.lambda = fin.lambda;
  pay.achieved = (long long)hr.sets.min_size();
  for (std::size_t i = 0; i < hr.relations.size(); ++i)
    pay.orders.push_back({(int)i, mdil::relation_name(hr.relations[i])});

  for (const auto& lv : hr.levels)
    std::cerr << "level " << lv.level << ": " << (lv.chain_branch ? "chain" : "sparse")
              << "  l: " << lv.ell << "  block: " << lv.block_size << "  relation: "
              << mdil::relation_name(lv.relation) << "\n";
  std::cerr << "sets: " << pay.sets.size() << "  smallest: " << pay.achieved << "\n";
  return write_data(a.out, mdil::result_to_json(pay).dump() + "\n");
}

struct GenArgs {
  std::string model_name = "chain";
  int n = 0;
  double p = 0.5;
  std::vector<int> widths;
  std::string base, out;
  std::uint64_t seed = 0;
};

int run_gen(const GenArgs& a) {
  mdil::GenSpec spec;
  spec.seed = a.seed;
  spec.p = a.p;
  if (a.model_name == "chain") {
    spec.model = mdil::GenModel::Chain;
    spec.n = a.n;
  } else if (a.model_name == "antichain") {
    spec.model = mdil::GenModel::Antichain;
    spec.n = a.n;
  } else if (a.model_name == "random-dag") {
    spec.model = mdil::GenModel::RandomDag;
    spec.n = a.n;
  } else if (a.model_name == "layered") {
    spec.model = mdil::GenModel::Layered;
    spec.widths = a.widths;
  } else if (a.model_name == "grid") {
    spec.model = mdil::GenModel::Grid;
    if (a.widths.size() != 2) throw mdil::SpecError("gen: grid needs --widths D1 D2");
    spec.d1 = a.widths[0];
    spec.d2 = a.widths[1];
  } else {
    spec.model = mdil::GenModel::Stacked;
    spec.n = a.n;
    if (a.base.empty()) throw mdil::SpecError("gen: stacked needs --base POSETFILE");
    spec.base = std::make_shared<mdil::Poset>(mdil::load_poset(a.base));
  }
  mdil::Poset p = mdil::generate(spec);
  std::cerr << "model: " << a.model_name << "  n: " << p.size() << "  seed: " << a.seed << "\n";
  std::ostringstream buf;
  mdil::save_poset(p, buf);
  return write_data(a.out, buf.str());
}

struct VerifyArgs {
  std::vector<std::string> inputs;
  std::string result;
};

mdil::StructureClaim claim_of(const std::string& rel) {
  if (rel == "ascending") return mdil::StructureClaim::AscendingChain;
  if (rel == "descending") return mdil::StructureClaim::DescendingChain;
  if (rel == "incomparable") return mdil::StructureClaim::TotallyIncomparable;
  throw mdil::ParseError("result file: unknown relation \"" + rel + "\"");
}

int run_verify(const VerifyArgs& a) {
  std::vector<mdil::Poset> ps;
  for (const auto& path : a.inputs) ps.push_back(mdil::load_poset(path));
  for (const auto& p : ps)
    if (p.size() != ps[0].size()) throw mdil::GroundMismatch("verify: orders differ in ground size");
  mdil::ResultPayload r = mdil::load_result(a.result);

  mdil::SubsetFamily fam{ps[0].size(), r.sets};
  bool ok = true;
  std::string why;
  auto check = [&](const mdil::Poset& p, mdil::StructureClaim claim, const std::string& tag) {
    if (!ok) return;
    try {
      mdil::VerifyResult vr = mdil::verify_structure(p, fam, claim);
      if (!vr.ok) {
        ok = false;
        why = tag + vr.message;
      }
    } catch (const mdil::Error& e) {
      ok = false;
      why = tag + e.what();
    }
  };

  if (!r.orders.empty()) {
    if (r.orders.size() != ps.size())
      throw mdil::GroundMismatch("verify: result lists " + std::to_string(r.orders.size()) +
                                 " orders but " + std::to_string(ps.size()) +
                                 " poset files were given");
    for (const auto& [idx, rel] : r.orders) {
      if (idx < 0 || idx >= (int)ps.size()) {
        ok = false;
        why = "order index " + std::to_string(idx) + " out of range";
        break;
      }
      check(ps[(std::size_t)idx], claim_of(rel), "order " + std::to_string(idx) + ": ");
    }
  } else {
    if (ps.size() != 1)
      throw mdil::GroundMismatch("verify: plain result needs exactly one poset file");
    if (r.kind == "set_chain") {
      if (!r.direction) {
        ok = false;
        why = "set_chain result lacks a direction";
      } else {
        check(ps[0], claim_of(*r.direction), "");
      }
    } else {
      check(ps[0], mdil::StructureClaim::TotallyIncomparable, "");
    }
  }

  if (ok) {
    long long mn = r.sets.empty() ? 0 : (long long)fam.min_size();
    if (r.achieved != mn) {
      ok = false;
      why = "achieved " + std::to_string(r.achieved) + " does not match smallest set " +
            std::to_string(mn);
    }
  }

  if (ok) {
    std::cerr << "valid\n";
    return 0;
  }
  std::cerr << "invalid: " << why << "\n";
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chain-of-sets / incomparable-family extraction for finite partial orders"};
  app.require_subcommand(1);

  FindArgs fa;
  CLI::App* find = app.add_subcommand("find", "extract k disjoint structured sets from one order");
  find->add_option("--input,-i", fa.input, "poset file (JSON or edge list)")->required();
  find->add_option("--k,-k", fa.k, "number of sets")->required()->check(CLI::Range(2, 100000000));
  find->add_option("--profile", fa.profile, "bound profile")
      ->check(CLI::IsMember({"thm1", "thm2"}))
      ->capture_default_str();
  find->add_option("--mode", fa.mode, "strict enforces the stated size guarantees")
      ->check(CLI::IsMember({"strict", "relaxed"}))
      ->capture_default_str();
  find->add_option("--out,-o", fa.out, "result file (default stdout)");

  MultiArgs ma;
  CLI::App* multi = app.add_subcommand("multi", "one family homogeneous in several orders");
  multi->add_option("--input,-i", ma.inputs, "poset files on the same ground set")->required();
  multi->add_option("--k,-k", ma.k, "number of sets")->required()->check(CLI::Range(2, 1000000));
  multi->add_option("--schedule", ma.schedule, "per-level set-count schedule")
      ->check(CLI::IsMember({"practical", "paper"}))
      ->capture_default_str();
  multi->add_option("--out,-o", ma.out, "result file (default stdout)");

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "generate a test poset");
  gen->add_option("--model", ga.model_name, "poset family")
      ->required()
      ->check(CLI::IsMember({"chain", "antichain", "random-dag", "layered", "grid", "stacked"}));
  gen->add_option("--n", ga.n, "size (stacked: copy count)")->check(CLI::Range(0, 100000000));
  gen->add_option("--p", ga.p, "pair probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--widths", ga.widths, "layer widths (grid: D1 D2)");
  gen->add_option("--base", ga.base, "poset file used as the stacked block");
  gen->add_option("--seed", ga.seed, "RNG seed");
  gen->add_option("--out,-o", ga.out, "poset file (default stdout)");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "re-check a result file against its inputs");
  verify->add_option("--input,-i", va.inputs, "poset file(s)")->required();
  verify->add_option("--result,-r", va.result, "result file")->required();

  long long bn = 0;
  int bk = 2;
  CLI::App* bounds = app.add_subcommand("bounds", "incomparable-family size bounds");
  bounds->add_option("--n", bn, "ground size")
      ->required()
      ->check(CLI::Range((long long)3, (long long)4000000000000000000LL));
  bounds->add_option("--k,-k", bk, "number of sets")->required()->check(CLI::Range(2, 100000000));

  std::string di, dout;
  CLI::App* dot = app.add_subcommand("dot", "cover diagram in DOT format");
  dot->add_option("--input,-i", di, "poset file")->required();
  dot->add_option("--out,-o", dout, "DOT file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (find->parsed()) return run_find(fa);
    if (multi->parsed()) return run_multi(ma);
    if (gen->parsed()) return run_gen(ga);
    if (verify->parsed()) return run_verify(va);
    if (bounds->parsed()) {
      mdil::BoundsReport r = mdil::mk_bounds(bn, bk);
      std::ostringstream buf;
      buf << "n " << r.n << "\nk " << r.k << "\nlower " << fmt(r.lower) << "\nlower_valid "
          << (r.lower_valid ? "true" : "false") << "\nupper " << fmt(r.upper) << "\n";
      return write_data("", buf.str());
    }
    if (dot->parsed()) {
      mdil::Poset p = mdil::load_poset(di);
      return write_data(dout, mdil::to_dot(p));
    }
  } catch (const mdil::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mdil::CycleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mdil::GroundMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const mdil::InstanceTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mdil::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mdil::DegenerateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mdil::TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mdil::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const mdil::RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mdil::OverlapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return 1;
}
