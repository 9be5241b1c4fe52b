// vrimg: square-graph Vietoris-Rips pipeline on grayscale images.
//
//   vrimg build      --input img.pgm --out dir [--epsilon E] [--counts]
//   vrimg components --input img.pgm --out dir --epsilon E
//   vrimg barcode    --input img.pgm --out dir
//   vrimg detect     --input img.pgm --out dir --mode component|threshold ...
//   vrimg sweep      --input img.pgm --out dir --epsilon E --n-max K [--cumulative]
//   vrimg depth      --input img.pgm [--method all|fast|brute|complex]
//
// Exit codes: 0 success, 1 I/O error, 2 invalid arguments.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "vrimg/vrimg.hpp"

namespace fs = std::filesystem;
using namespace vrimg;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string out_dir = ".";
  bool crop = false;
  int fill = kDefaultFill;
  std::string format = "pgm";

  std::optional<int> epsilon;
  std::optional<int> threshold;
  int n_max = 0;
  int rank = 1;
  std::string mode;
  std::string region_class = "squares";
  std::string aspect_min = "1/3";
  std::string aspect_max = "3";
  bool cumulative = false;
  bool write_counts = false;
  std::string depth_method = "all";
};

Fraction parse_ratio(const std::string& text, const char* what) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long v = std::stol(text, &used);
      if (used == text.size() && v > 0) return {v, 1};
    } else {
      const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      std::size_t ua = 0, ub = 0;
      const long p = std::stol(a, &ua), q = std::stol(b, &ub);
      if (ua == a.size() && ub == b.size() && p > 0 && q > 0) return {p, q};
    }
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(what) + " must be a positive rational p/q or integer, got '" + text + "'");
}

class Runner {
 public:
  explicit Runner(RunConfig cfg) : cfg_(std::move(cfg)) {}

  const Image& image() {
    if (!image_) image_ = load_image(cfg_.input, cfg_.crop);
    return *image_;
  }
  const SquareCountTable& counts() {
    if (!counts_) counts_ = all_square_counts(image());
    return *counts_;
  }
  const CsrGraph& graph() {
    if (!graph_) graph_ = build_graph(image(), counts());
    return *graph_;
  }

  fs::path output(const std::string& command, const std::string& ext,
                  std::optional<int> n = std::nullopt) const {
    std::string name = fs::path(cfg_.input).stem().string() + "_" + command;
    if (n) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "_%03d", *n);
      name += buf;
    }
    return fs::path(cfg_.out_dir) / (name + "." + ext);
  }

  void ensure_out_dir() const {
    std::error_code ec;
    fs::create_directories(cfg_.out_dir, ec);
    if (ec) throw ImageIoError("cannot create output directory " + cfg_.out_dir + ": " + ec.message());
  }

  void write_image(const fs::path& path, const Image& img) const {
    write_file_atomic(path, cfg_.format == "png" ? encode_png(img) : encode_pgm(img));
  }

  void build() {
    const CsrGraph& g = graph();
    ensure_out_dir();
    write_file_atomic(output("build", "csv"), csr_csv(cfg_.epsilon ? threshold(g, *cfg_.epsilon) : g));
    if (cfg_.write_counts) write_file_atomic(output("build_counts", "csv"), counts_csv(counts()));
    std::cout << "vertices=" << g.vertices() << " edges=" << g.edges() << "\n";
  }

  void components() {
    if (!cfg_.epsilon) throw UsageError("components requires --epsilon");
    const auto cc = connected_components(graph(), *cfg_.epsilon);
    ensure_out_dir();
    write_file_atomic(output("components", "csv"), labeling_csv(cc));
    std::cout << "components=" << cc.component_count << "\n";
  }

  void barcode() {
    const auto bc = h0_barcode(graph());
    ensure_out_dir();
    const std::string csv = barcode_csv(bc);
    write_file_atomic(output("barcode", "csv"), csv);
    std::cout << csv;
  }

  void detect() {
    DetectionResult res;
    if (cfg_.mode == "component") {
      if (!cfg_.epsilon) throw UsageError("--mode component requires --epsilon");
      if (cfg_.threshold) throw UsageError("--threshold is not used by --mode component");
      if (cfg_.region_class != "squares") throw UsageError("--mode component supports squares only");
      res = detect_component(image(), graph(), *cfg_.epsilon);
    } else if (cfg_.mode == "threshold") {
      const int c = counts().total();
      int t = 0;
      if (cfg_.threshold) {
        t = *cfg_.threshold;
      } else if (cfg_.epsilon) {
        t = std::max(1, c - *cfg_.epsilon);
      } else {
        throw UsageError("--mode threshold requires --threshold or --epsilon");
      }
      if (t < 1 || t > c)
        throw UsageError("threshold " + std::to_string(t) + " outside [1, " + std::to_string(c) + "]");
      if (cfg_.region_class == "rectangles") {
        if (cfg_.rank != 1) throw UsageError("--rank applies to squares only");
        const Fraction lo = parse_ratio(cfg_.aspect_min, "--aspect-min");
        const Fraction hi = parse_ratio(cfg_.aspect_max, "--aspect-max");
        if (!(lo <= Fraction{1, 1}) || !(Fraction{1, 1} <= hi))
          throw UsageError("aspect bounds must satisfy aspect-min <= 1 <= aspect-max");
        res = detect_rects_threshold(image(), t, lo, hi);
      } else {
        res = detect_squares_threshold(image(), counts(), t, cfg_.rank);
      }
      if (cfg_.epsilon) res.params.epsilon = cfg_.epsilon;
    } else {
      throw UsageError("--mode must be component or threshold");
    }
    ensure_out_dir();
    write_image(output("detect", cfg_.format), render_overlay(image(), res.rects(), cfg_.fill));
    write_file_atomic(output("detect", "json"), regions_json_text(res));
    std::cout << "regions=" << res.regions.size()
              << (res.region_class == RegionClass::squares ? " size=" : " area=")
              << res.selected_size_or_area << "\n";
  }

  void sweep_cmd() {
    if (!cfg_.epsilon) throw UsageError("sweep requires --epsilon");
    if (*cfg_.epsilon < 1) throw UsageError("sweep --epsilon must be at least 1");
    const auto steps = sweep(image(), counts(), *cfg_.epsilon, cfg_.n_max, cfg_.rank, cfg_.fill);
    ensure_out_dir();
    auto summary = nlohmann::json::array();
    for (const auto& s : steps) {
      write_image(output("sweep", cfg_.format, s.n), cfg_.cumulative ? s.cumulative_overlay : s.overlay);
      summary.push_back({{"n", s.n},
                         {"threshold", s.threshold},
                         {"sizes", s.result.selected_sizes},
                         {"regions", regions_json(s.result)},
                         {"gray_fraction", s.gray_fraction},
                         {"cumulative_gray_fraction", s.cumulative_gray_fraction}});
      std::cout << "n=" << s.n << " t=" << s.threshold << " size=" << s.result.selected_size_or_area
                << " regions=" << s.result.regions.size()
                << " gray=" << (cfg_.cumulative ? s.cumulative_gray_fraction : s.gray_fraction) << "\n";
    }
    write_file_atomic(output("sweep", "json"), summary.dump(2) + "\n");
  }

  void depth() {
    const std::string& m = cfg_.depth_method;
    if (m != "all" && m != "fast" && m != "brute" && m != "complex")
      throw UsageError("--method must be all, fast, brute or complex");
    const Image& img = image();
    const Fraction fast = depth_fast(counts());
    std::ostringstream line;
    auto sep = [&] {
      if (line.tellp() > 0) line << ' ';
    };
    if (m == "all" || m == "brute") {
      sep();
      if (static_cast<int>(image_color_set(img).size()) <= kMaxBruteForceColors)
        line << "brute=" << depth_bruteforce(img);
      else
        line << "brute=skipped";
    }
    if (m == "all" || m == "fast") {
      sep();
      line << "fast=" << fast;
    }
    if (m == "all" || m == "complex") {
      sep();
      if (counts().total() > 1) {
        const Fraction via = depth_via_complex(graph());
        line << "via_complex=" << via;
        if (m == "all") {
          const auto diff = via.num - fast.num;
          line << " discrepancy=" << (diff >= 0 ? "+" : "") << diff;
        }
      } else {
        line << "via_complex=undefined";
        if (m == "all") line << " discrepancy=undefined";
      }
    }
    std::cout << line.str() << "\n";
  }

 private:
  RunConfig cfg_;
  std::optional<Image> image_;
  std::optional<SquareCountTable> counts_;
  std::optional<CsrGraph> graph_;
};

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Square-graph Vietoris-Rips analysis and salient-region detection for grayscale images"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--input", cfg.input, "PGM (P2/P5) or PNG image")->required()->check(CLI::ExistingFile);
  app.add_option("--out", cfg.out_dir, "Output directory");
  app.add_flag("--crop", cfg.crop, "Center-crop non-square inputs");
  app.add_option("--fill", cfg.fill, "Gray value outside detected regions")->check(CLI::Range(0, 255));
  app.add_option("--format", cfg.format, "Overlay image format")->check(CLI::IsMember({"pgm", "png"}));

  auto* build = app.add_subcommand("build", "Write the weighted square graph as CSR CSV");
  build->add_option("--epsilon", cfg.epsilon, "Also emit keep-flags for this threshold")->check(CLI::NonNegativeNumber);
  build->add_flag("--counts", cfg.write_counts, "Also write the per-square color count table");

  auto* comps = app.add_subcommand("components", "Label connected components at a threshold");
  comps->add_option("--epsilon", cfg.epsilon)->required()->check(CLI::NonNegativeNumber);

  auto* barcode = app.add_subcommand("barcode", "0-th persistence as epsilon,components rows");

  auto* detect = app.add_subcommand("detect", "Highlight minimal high-color regions");
  detect->add_option("--mode", cfg.mode)->required()->check(CLI::IsMember({"component", "threshold"}));
  detect->add_option("--epsilon", cfg.epsilon)->check(CLI::NonNegativeNumber);
  detect->add_option("--threshold", cfg.threshold, "Minimum color count")->check(CLI::PositiveNumber);
  detect->add_option("--rank", cfg.rank, "Number of smallest qualifying sizes")->check(CLI::PositiveNumber);
  detect->add_option("--class", cfg.region_class)->check(CLI::IsMember({"squares", "rectangles"}));
  detect->add_option("--aspect-min", cfg.aspect_min, "Minimum height/width, e.g. 1/3");
  detect->add_option("--aspect-max", cfg.aspect_max, "Maximum height/width, e.g. 3");

  auto* sweep = app.add_subcommand("sweep", "Detect with t = c - n*epsilon for n = 0..n-max");
  sweep->add_option("--epsilon", cfg.epsilon)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--n-max", cfg.n_max)->required()->check(CLI::NonNegativeNumber);
  sweep->add_flag("--cumulative", cfg.cumulative, "Overlay n shows the union of steps 0..n");
  sweep->add_option("--rank", cfg.rank)->check(CLI::PositiveNumber);

  auto* depth = app.add_subcommand("depth", "Print image depth as exact fractions");
  depth->add_option("--method", cfg.depth_method)->check(CLI::IsMember({"all", "fast", "brute", "complex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Runner run(cfg);
  try {
    if (*build) run.build();
    else if (*comps) run.components();
    else if (*barcode) run.barcode();
    else if (*detect) run.detect();
    else if (*sweep) run.sweep_cmd();
    else if (*depth) run.depth();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonSquareImageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ImageIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
