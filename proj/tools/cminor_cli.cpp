// Command-line front end: class labels, minor/equivalence decisions, class
// posets, the arity-reduction bound, and witness searches.
//
// Exit codes: 0 success / decision "true"; 1 decision "false" or a failed
// verification; 2 usage or domain errors; 3 a resource cap was hit.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cminor/arity_bound.hpp"
#include "cminor/boolean_catalog.hpp"
#include "cminor/clone.hpp"
#include "cminor/finite_op.hpp"
#include "cminor/minor.hpp"
#include "cminor/poset.hpp"

namespace {

cminor::Clone make_clone(const std::string& name, int k) {
  cminor::Clone clone = cminor::named_clone(name, k);
  if (const char* cap = std::getenv("CLONE_MINOR_CAP")) clone.set_cell_cap(std::stoull(cap));
  return clone;
}

bool run_minor(const cminor::Clone& clone, const cminor::FiniteOp& f, const cminor::FiniteOp& g,
               const std::string& method) {
  if (method == "decide") return cminor::minor_decide(clone, f, g);
  if (method == "brute") return cminor::minor_bruteforce(clone, f, g);
  const bool decidable =
      clone.is_discriminator() && (clone.has_generators() || clone.name() == "O");
  return decidable ? cminor::minor_decide(clone, f, g) : cminor::minor_bruteforce(clone, f, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minor quasiorders of finitary operations over discriminator clones"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string clone_name = "D";
  std::string method = "auto";
  std::string format = "dot";
  std::string f_text, g_text, op_text;
  int k = 2;
  int max_arity = 3;
  int slice_arity = 1;
  int target_arity = -1;
  bool as_json = false;

  auto* classify = app.add_subcommand("classify", "Print the class label of a Boolean operation");
  classify->add_option("op", op_text, "operation, written k:n:digits")->required();
  classify->add_option("--clone", clone_name, "one of O, T0, T1, Tid, S, D")
      ->capture_default_str();
  classify->add_flag("--json", as_json, "emit JSON");
  classify->callback([&] {
    const auto id = cminor::boolean_clone_from_name(clone_name);
    if (!id)
      throw std::invalid_argument("classify covers the named Boolean clones O, T0, T1, Tid, S, D");
    const cminor::FiniteOp op = cminor::FiniteOp::parse(op_text);
    const std::string label = cminor::class_label(*id, op).text();
    if (as_json)
      std::cout << nlohmann::json{{"op", op.to_text()}, {"clone", clone_name}, {"label", label}}
                << "\n";
    else
      std::cout << label << "\n";
  });

  auto* minor = app.add_subcommand("minor", "Decide whether f is a minor of g over a clone");
  minor->add_option("f", f_text, "operation, written k:n:digits")->required();
  minor->add_option("g", g_text, "operation, written k:n:digits")->required();
  minor->add_option("--clone", clone_name, "named clone or gen:<op>,<op>,...")
      ->capture_default_str();
  minor->add_option("--method", method, "auto, decide, or brute")->capture_default_str();
  minor->callback([&] {
    const cminor::FiniteOp f = cminor::FiniteOp::parse(f_text);
    const cminor::FiniteOp g = cminor::FiniteOp::parse(g_text);
    const cminor::Clone clone = make_clone(clone_name, f.base());
    const bool yes = run_minor(clone, f, g, method);
    std::cout << (yes ? "true" : "false") << "\n";
    exit_code = yes ? 0 : 1;
  });

  auto* equiv = app.add_subcommand("equiv", "Decide whether f and g are minors of each other");
  equiv->add_option("f", f_text, "operation, written k:n:digits")->required();
  equiv->add_option("g", g_text, "operation, written k:n:digits")->required();
  equiv->add_option("--clone", clone_name, "named clone or gen:<op>,<op>,...")
      ->capture_default_str();
  equiv->add_option("--method", method, "auto, decide, or brute")->capture_default_str();
  equiv->callback([&] {
    const cminor::FiniteOp f = cminor::FiniteOp::parse(f_text);
    const cminor::FiniteOp g = cminor::FiniteOp::parse(g_text);
    const cminor::Clone clone = make_clone(clone_name, f.base());
    const bool yes = run_minor(clone, f, g, method) && run_minor(clone, g, f, method);
    std::cout << (yes ? "true" : "false") << "\n";
    exit_code = yes ? 0 : 1;
  });

  auto* classes = app.add_subcommand(
      "classes", "List the equivalence classes of all operations up to an arity");
  classes->add_option("--clone", clone_name, "named clone or gen:<op>,<op>,...")
      ->capture_default_str();
  classes->add_option("--k", k, "base size")->capture_default_str();
  classes->add_option("--max-arity", max_arity, "largest arity to scan")->capture_default_str();
  classes->add_flag("--json", as_json, "emit JSON");
  classes->callback([&] {
    const cminor::Clone clone = make_clone(clone_name, k);
    const cminor::Poset poset = cminor::enumerate_classes(clone, max_arity);
    if (as_json) {
      std::cout << poset.to_json() << "\n";
      return;
    }
    for (const cminor::PosetNode& node : poset.nodes())
      std::cout << node.label << "\t" << node.representative.to_text() << "\n";
  });

  auto* hasse = app.add_subcommand("hasse", "Print the covering diagram of the classes");
  hasse->add_option("--clone", clone_name, "named clone or gen:<op>,<op>,...")
      ->capture_default_str();
  hasse->add_option("--k", k, "base size")->capture_default_str();
  hasse->add_option("--max-arity", max_arity, "largest arity to scan")->capture_default_str();
  hasse->add_option("--format", format, "dot or json")->capture_default_str();
  hasse->callback([&] {
    const cminor::Clone clone = make_clone(clone_name, k);
    const cminor::Poset poset = cminor::enumerate_classes(clone, max_arity);
    if (format == "json")
      std::cout << poset.to_json() << "\n";
    else if (format == "dot")
      std::cout << poset.to_dot(clone_name);
    else
      throw std::invalid_argument("format must be dot or json");
    if (k == 2) {
      if (const auto id = cminor::boolean_clone_from_name(clone_name)) {
        const cminor::Poset expected = cminor::expected_poset(*id);
        if (!cminor::same_labeled_poset(poset, expected)) {
          std::cerr << "computed diagram disagrees with the known classification over "
                    << clone_name << "\n";
          exit_code = 1;
        }
      }
    }
  });

  auto* bound = app.add_subcommand(
      "verify-bound", "Check the arity-reduction bound d = k^k - k^(k-1) + 1");
  bound->add_option("--k", k, "base size (2, 3, or 4)")->capture_default_str();
  bound->add_flag("--json", as_json, "emit JSON");
  bound->callback([&] {
    const cminor::BoundReport report = cminor::check_bound(k);
    if (as_json) {
      std::cout << report.to_json() << "\n";
    } else {
      std::cout << "k=" << report.k << " d=" << report.d << "\n";
      for (const cminor::BoundRow& row : report.rows)
        std::cout << "r=" << row.r << " required=" << row.required
                  << " available=" << row.available.str() << " "
                  << (row.ok ? "ok" : "FAIL") << "\n";
      std::cout << (report.all_ok ? "bound holds" : "bound fails") << "\n";
    }
    exit_code = report.all_ok ? 0 : 1;
  });

  auto* reduce = app.add_subcommand(
      "reduce", "Produce an equivalent operation of the target arity");
  reduce->add_option("f", f_text, "operation, written k:n:digits")->required();
  reduce->add_option("--d", target_arity, "target arity (default: the universal bound)");
  reduce->callback([&] {
    const cminor::FiniteOp f = cminor::FiniteOp::parse(f_text);
    const int d = target_arity > 0 ? target_arity : cminor::reduction_target_arity(f.base());
    std::cout << cminor::reduce_to_d_ary(f, d).to_text() << "\n";
  });

  auto* witness = app.add_subcommand(
      "witness", "Search for inner operations showing f is a minor of g");
  witness->add_option("f", f_text, "operation, written k:n:digits")->required();
  witness->add_option("g", g_text, "operation, written k:n:digits")->required();
  witness->add_option("--clone", clone_name, "named clone or gen:<op>,<op>,...")
      ->capture_default_str();
  witness->callback([&] {
    const cminor::FiniteOp f = cminor::FiniteOp::parse(f_text);
    const cminor::FiniteOp g = cminor::FiniteOp::parse(g_text);
    const cminor::Clone clone = make_clone(clone_name, f.base());
    const auto found = cminor::minor_witness(clone, f, g);
    if (!found) {
      std::cout << "no witness\n";
      exit_code = 1;
      return;
    }
    for (const cminor::FiniteOp& h : *found) std::cout << h.to_text() << "\n";
  });

  auto* slice = app.add_subcommand("clone-gen", "List a clone's members at one arity");
  slice->add_option("--clone", clone_name, "named clone or gen:<op>,<op>,...")
      ->capture_default_str();
  slice->add_option("--k", k, "base size")->capture_default_str();
  slice->add_option("--arity", slice_arity, "arity of the slice")->capture_default_str();
  slice->callback([&] {
    const cminor::Clone clone = make_clone(clone_name, k);
    for (const cminor::FiniteOp& op : *clone.members(slice_arity))
      std::cout << op.to_text() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const cminor::ResourceLimitError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
