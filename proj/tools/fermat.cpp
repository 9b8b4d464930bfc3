// Command-line front end for the fermat library.
//
//   fermat resolve          --weights 2,3,6 --twist 0,0,0,0 --stages 6
//   fermat ext              --weights 3,3,3 --source 0,0,0,0 --target -1,0,0,0
//   fermat table            --weights 2,4,4 --format csv
//   fermat verify-collection --weights 3,4,5
//   fermat compare          --weights 3,3,3 --field 32003
//   fermat euler            --weights 2,3,6 --format tex
//   fermat reduce-class     --weights 2,3,6 --twist 0,0,-5,0
//   fermat selftest [--weights p0,p1,p2]
//
// Exit status: 0 on success (and verification pass), 1 when a verification
// subcommand finds a failure, 2 on usage errors.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fermat/io.hpp"
#include "fermat/selftest.hpp"

namespace {

using fermat::GradeElement;
using fermat::Json;
using fermat::Weight;

std::vector<std::int64_t> parse_csv_ints(const std::string& text,
                                         std::size_t count,
                                         const std::string& what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    std::size_t used = 0;
    out.push_back(std::stoll(piece, &used));
    if (used != piece.size())
      throw CLI::ValidationError(what, "not an integer: '" + piece + "'");
  }
  if (out.size() != count)
    throw CLI::ValidationError(
        what, "expected " + std::to_string(count) + " comma-separated values");
  return out;
}

Weight parse_weights(const std::string& text) {
  auto v = parse_csv_ints(text, 3, "--weights");
  for (std::int64_t p : v)
    if (p < 2)
      throw CLI::ValidationError("--weights", "each weight must be >= 2");
  return Weight{v[0], v[1], v[2]};
}

GradeElement parse_grade(const Weight& w, const std::string& text,
                         const std::string& what) {
  auto v = parse_csv_ints(text, 4, what);
  return GradeElement(w, v[0], v[1], v[2], v[3]);
}

// --field QQ selects exact rationals; --field <prime> selects F_p. The
// default comes from the FERMAT_FIELD environment variable when set.
struct FieldChoice {
  bool rational = true;
  std::uint64_t modulus = 0;
};

FieldChoice parse_field(const std::string& text, const Weight& w) {
  if (text == "QQ" || text == "qq") return {};
  std::size_t used = 0;
  unsigned long long q = std::stoull(text, &used);
  if (used != text.size())
    throw CLI::ValidationError("--field", "expected QQ or a prime number");
  fermat::Fp::set_modulus(q);  // throws std::invalid_argument if not prime
  for (std::int64_t p : {w.p0, w.p1, w.p2})
    if (p % static_cast<std::int64_t>(q) == 0)
      std::cerr << "warning: field characteristic " << q
                << " divides weight " << p
                << "; resolutions over this field can degenerate\n";
  return {false, q};
}

std::string default_field() {
  const char* env = std::getenv("FERMAT_FIELD");
  return env && *env ? env : "QQ";
}

// Emit `text` to stdout, or to <out_dir>/<name>.<ext> when --out was given.
void deliver(const std::string& out_dir, const std::string& name,
             const std::string& ext, const std::string& text) {
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(out_dir);
  std::string path = out_dir + "/" + name + "." + ext;
  fermat::write_text_file(path, text);
  std::cerr << "wrote " << path << "\n";
}

std::string dumped(const Json& j) { return j.dump(2) + "\n"; }

struct CommonOpts {
  std::string weights = "2,3,6";
  std::string format = "json";
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts,
                const std::vector<std::string>& formats) {
  cmd->add_option("--weights", opts.weights,
                  "exponents p0,p1,p2 of the three-variable relation")
      ->capture_default_str();
  if (!formats.empty())
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
  cmd->add_option("--out", opts.out_dir,
                  "directory to write the output artifact into "
                  "(default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact homological computations for weighted three-variable "
      "hypersurface algebras"};
  app.require_subcommand(1);

  // resolve -------------------------------------------------------------
  CommonOpts resolve_opts;
  std::string resolve_twist = "0,0,0,0";
  std::size_t resolve_stages = 6;
  std::string resolve_field = default_field();
  auto* resolve = app.add_subcommand(
      "resolve", "build the graded free resolution of a twisted simple");
  add_common(resolve, resolve_opts, {"json"});
  resolve->add_option("--twist", resolve_twist,
                      "internal twist a,b,c,m (normalized on input)")
      ->capture_default_str();
  resolve->add_option("--stages", resolve_stages, "number of stages to build")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}))
      ->capture_default_str();
  resolve->add_option("--field", resolve_field,
                      "coefficient field: QQ or a prime modulus")
      ->capture_default_str();

  // ext -----------------------------------------------------------------
  CommonOpts ext_opts;
  std::string ext_source, ext_target;
  std::size_t ext_max_degree = 6;
  auto* ext = app.add_subcommand(
      "ext", "graded Ext dimensions between two twisted simples");
  add_common(ext, ext_opts, {"json"});
  ext->add_option("--source", ext_source, "source twist a,b,c,m")->required();
  ext->add_option("--target", ext_target, "target twist a,b,c,m")->required();
  ext->add_option("--max-degree", ext_max_degree,
                  "highest cohomological degree reported")
      ->check(CLI::Range(std::size_t{0}, std::size_t{64}))
      ->capture_default_str();

  // table ---------------------------------------------------------------
  CommonOpts table_opts;
  std::size_t table_max_degree = 3;
  auto* table = app.add_subcommand(
      "table",
      "Ext table over the index set, with the concentration pattern check");
  add_common(table, table_opts, {"json", "csv", "tex"});
  table->add_option("--max-degree", table_max_degree,
                    "highest cohomological degree tabulated")
      ->check(CLI::Range(std::size_t{0}, std::size_t{64}))
      ->capture_default_str();

  // verify-collection -----------------------------------------------------
  CommonOpts coll_opts;
  std::size_t coll_max_degree = 12;
  std::int64_t coll_window = 3;
  auto* coll = app.add_subcommand(
      "verify-collection",
      "check exceptionality and membership criteria over the index set");
  add_common(coll, coll_opts, {"json"});
  coll->add_option("--max-degree", coll_max_degree,
                   "degree window for the orthogonality checks")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}))
      ->capture_default_str();
  coll->add_option("--window", coll_window,
                   "membership-window multiplier (slope units)")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{16}))
      ->capture_default_str();

  // compare ---------------------------------------------------------------
  CommonOpts compare_opts;
  std::string compare_field = default_field();
  auto* compare = app.add_subcommand(
      "compare",
      "match the Yoneda category of the collection against the tensor "
      "product of directed quiver categories");
  add_common(compare, compare_opts, {"json", "dot"});
  compare->add_option("--field", compare_field,
                      "coefficient field: QQ or a prime modulus")
      ->capture_default_str();

  // euler -----------------------------------------------------------------
  CommonOpts euler_opts;
  auto* euler = app.add_subcommand(
      "euler", "Euler pairing Gram matrix and its Kronecker factorization");
  add_common(euler, euler_opts, {"json", "csv", "tex"});

  // reduce-class ------------------------------------------------------------
  CommonOpts reduce_opts;
  std::string reduce_twist;
  auto* reduce = app.add_subcommand(
      "reduce-class",
      "reduce a twisted simple's K-class onto the index-set basis");
  add_common(reduce, reduce_opts, {"json"});
  reduce->add_option("--twist", reduce_twist, "twist a,b,c,m to reduce")
      ->required();

  // selftest ----------------------------------------------------------------
  std::string selftest_weights;
  auto* selftest = app.add_subcommand(
      "selftest", "run the full acceptance suite (text output)");
  selftest->add_option(
      "--weights", selftest_weights,
      "run for a single weight triple instead of the default list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (resolve->parsed()) {
      Weight w = parse_weights(resolve_opts.weights);
      GradeElement twist = parse_grade(w, resolve_twist, "--twist");
      FieldChoice field = parse_field(resolve_field, w);
      Json j = field.rational
                   ? fermat::resolution_json<fermat::Rational>(w, twist,
                                                               resolve_stages)
                   : fermat::resolution_json<fermat::Fp>(w, twist,
                                                         resolve_stages);
      deliver(resolve_opts.out_dir, "resolve", "json", dumped(j));
      return 0;
    }

    if (ext->parsed()) {
      Weight w = parse_weights(ext_opts.weights);
      GradeElement source = parse_grade(w, ext_source, "--source");
      GradeElement target = parse_grade(w, ext_target, "--target");
      Json j = fermat::ext_pair_json(w, source, target, ext_max_degree);
      deliver(ext_opts.out_dir, "ext", "json", dumped(j));
      return 0;
    }

    if (table->parsed()) {
      Weight w = parse_weights(table_opts.weights);
      auto box = fermat::index_set(w);
      auto t = fermat::rhom_table(w, box.elements, table_max_degree);
      auto verdict =
          fermat::verify_rhom_pattern(w, box.elements, table_max_degree);
      std::string text;
      if (table_opts.format == "csv") {
        text = fermat::ext_table_csv(t);
      } else if (table_opts.format == "tex") {
        text = fermat::ext_table_tex(t);
      } else {
        Json j;
        j["table"] = fermat::ext_table_json(t);
        j["pattern"] = fermat::pattern_json(verdict);
        text = dumped(j);
      }
      deliver(table_opts.out_dir, "table", table_opts.format, text);
      return verdict.pass ? 0 : 1;
    }

    if (coll->parsed()) {
      Weight w = parse_weights(coll_opts.weights);
      auto exceptional = fermat::verify_exceptional(w, coll_max_degree);
      Json j;
      j["weight"] = fermat::weight_json(w);
      j["exceptional"] = fermat::exceptional_json(exceptional);
      bool all = exceptional.pass();
      Json mem = Json::array();
      for (const GradeElement& n : fermat::index_set(w).elements) {
        auto r = fermat::membership_in_T(w, n, coll_window);
        all = all && r.pass();
        mem.push_back(fermat::membership_json(r));
      }
      j["membership"] = mem;
      j["pass"] = all;
      deliver(coll_opts.out_dir, "verify-collection", "json", dumped(j));
      return all ? 0 : 1;
    }

    if (compare->parsed()) {
      Weight w = parse_weights(compare_opts.weights);
      if (compare_opts.format == "dot") {
        auto triple = fermat::triple_tensor_collection<fermat::Rational>(w);
        deliver(compare_opts.out_dir, "compare", "dot",
                fermat::category_dot(triple.category));
        return 0;
      }
      FieldChoice field = parse_field(compare_field, w);
      bool pass = false;
      Json j;
      if (field.rational) {
        auto rep = fermat::comparison_isomorphism<fermat::Rational>(w);
        pass = rep.pass();
        j = fermat::comparison_json(rep);
      } else {
        auto rep = fermat::comparison_isomorphism<fermat::Fp>(w);
        pass = rep.pass();
        j = fermat::comparison_json(rep);
      }
      deliver(compare_opts.out_dir, "compare", "json", dumped(j));
      return pass ? 0 : 1;
    }

    if (euler->parsed()) {
      Weight w = parse_weights(euler_opts.weights);
      if (euler_opts.format == "csv") {
        deliver(euler_opts.out_dir, "euler", "csv",
                fermat::int_matrix_csv(fermat::gram_matrix(w)));
        return 0;
      }
      if (euler_opts.format == "tex") {
        deliver(euler_opts.out_dir, "euler", "tex",
                fermat::int_matrix_tex(fermat::gram_matrix(w)));
        return 0;
      }
      Json j = fermat::euler_json(w);
      deliver(euler_opts.out_dir, "euler", "json", dumped(j));
      return j["pass"].get<bool>() ? 0 : 1;
    }

    if (reduce->parsed()) {
      Weight w = parse_weights(reduce_opts.weights);
      GradeElement m = parse_grade(w, reduce_twist, "--twist");
      auto result = fermat::reduce_class_traced(w, m);
      auto chk = fermat::verify_reduction_pairing(w, m);
      Json j = fermat::reduction_json(w, m, result, chk);
      deliver(reduce_opts.out_dir, "reduce-class", "json", dumped(j));
      return chk.pass ? 0 : 1;
    }

    if (selftest->parsed()) {
      std::vector<Weight> weights = fermat::default_weights();
      if (!selftest_weights.empty())
        weights = {parse_weights(selftest_weights)};
      auto results = fermat::run_acceptance(weights);
      return fermat::report_acceptance(std::cout, results) ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
