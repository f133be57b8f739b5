#include "gstf/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gstf/transforms.hpp"

namespace gstf {

namespace {

// Index sums within this distance of 1 are treated as exactly 1.
constexpr double kIndexTol = 1e-12;

enum class Construction { Gaussian, Bump, FourierBump };

struct Choice {
  Construction kind;
  int k = 0;
};

void require_two_parameter(const GSIndex& idx) {
  if (!idx.has_s() || !idx.has_sigma()) {
    throw Error(ErrorKind::InvalidArgument, "witnesses need a two-parameter index, got " + idx.name());
  }
}

// Smallest k >= 2 with Gevrey order 1 + 1/k at most halfway between 1 and
// the target index, or 0 if that needs k beyond the catalog limit. k = 1 is
// avoided: the e^{-c sqrt|x|} transform tail reaches the noise floor before
// (1 + x^2)^8 times it turns over.
int bump_order_for(double index) {
  if (!(index > 1.0)) return 0;
  const double k = std::ceil(2.0 / (index - 1.0) - 1e-9);
  return k <= 16.0 ? static_cast<int>(std::max(k, 2.0)) : 0;
}

Choice choose(const GSIndex& idx) {
  require_two_parameter(idx);
  const bool beurling = idx.regularity == Regularity::Beurling;
  const double total = idx.s + idx.sigma;
  if (beurling ? total <= 1.0 + kIndexTol : total < 1.0 - kIndexTol) {
    throw Error(ErrorKind::TrivialSpace, idx.name() + " contains only the zero function");
  }
  const double lo = std::min(idx.s, idx.sigma);
  if (beurling ? lo > 0.5 : lo >= 0.5) return {Construction::Gaussian};
  if (int k = bump_order_for(idx.sigma)) return {Construction::Bump, k};
  if (int k = bump_order_for(idx.s)) return {Construction::FourierBump, k};
  throw Error(ErrorKind::UnsupportedRegion,
              idx.name() + " is nontrivial but no elementary witness is implemented for it");
}

ClassifyOptions beurling_options(const SampledFunction& f, const GSIndex& side) {
  ClassifyOptions opts;
  if (side.regularity != Regularity::Beurling) return opts;
  const GSIndex roumieu = side.has_s() ? GSIndex::decay(side.s, Regularity::Roumieu)
                                       : GSIndex::fourier(side.sigma, Regularity::Roumieu);
  const EnvelopeReport r = classify_function(f, roumieu, opts);
  if (std::isfinite(r.r_fit) && r.r_fit > 0.0) {
    const double top = *std::max_element(opts.r_list.begin(), opts.r_list.end());
    opts.r_scale = kBeurlingMargin * r.r_fit / top;
  }
  return opts;
}

}  // namespace

Grid1D witness_grid(const GSIndex& idx) {
  switch (choose(idx).kind) {
    case Construction::Gaussian: return build_grid(12.0, 10);
    case Construction::Bump: return build_grid(2.0, 12);
    case Construction::FourierBump: return build_grid(1024.0, 12);
  }
  return build_grid(12.0, 10);
}

Witness make_witness(const GSIndex& idx) { return make_witness(idx, witness_grid(idx)); }

Witness make_witness(const GSIndex& idx, const Grid1D& grid) {
  const Choice c = choose(idx);
  const FunctionSpec spec = c.kind == Construction::Gaussian ? FunctionSpec::gaussian(1.0) : FunctionSpec::bump(c.k);
  const bool image = c.kind == Construction::FourierBump;
  // The transform case samples the bump in frequency so that dft lands on `grid`.
  std::optional<SampledFunction> spectrum;
  if (image) spectrum = catalog_eval(spec, dual_grid(grid));
  SampledFunction samples = image ? dft(*spectrum) : catalog_eval(spec, grid);
  ClassifyOptions decay_opts = beurling_options(samples, GSIndex::decay(idx.s, idx.regularity));
  ClassifyOptions fourier_opts = image ? beurling_options(*spectrum, GSIndex::decay(idx.sigma, idx.regularity))
                                       : beurling_options(samples, GSIndex::fourier(idx.sigma, idx.regularity));
  Witness w{image ? "dft(" + pretty_print(spec) + ")" : pretty_print(spec),
            spec,
            image,
            std::move(samples),
            std::move(spectrum),
            std::move(decay_opts),
            std::move(fourier_opts)};
  return w;
}

WitnessCheck check_witness(const Witness& w, const GSIndex& idx) {
  require_two_parameter(idx);
  WitnessCheck out;
  out.decay_side = classify_function(w.samples, GSIndex::decay(idx.s, idx.regularity), w.decay_options);
  if (w.spectrum) {
    out.fourier_side = classify_function(*w.spectrum, GSIndex::decay(idx.sigma, idx.regularity), w.fourier_options);
    out.fourier_side.space = GSIndex::fourier(idx.sigma, idx.regularity).name();
    std::swap(out.fourier_side.decay_axis, out.fourier_side.fourier_axis);
    out.fourier_side.notes.push_back("classified on the exact spectrum samples");
  } else {
    out.fourier_side = classify_function(w.samples, GSIndex::fourier(idx.sigma, idx.regularity), w.fourier_options);
  }
  out.passed = out.decay_side.verdict == Verdict::Member && out.fourier_side.verdict == Verdict::Member;
  return out;
}

BoundaryDemo boundary_triviality_demo(double s) { return boundary_triviality_demo(s, build_grid(12.0, 10)); }

BoundaryDemo boundary_triviality_demo(double s, const Grid1D& grid) {
  if (!(s > 0.0 && s < 1.0)) throw Error(ErrorKind::InvalidArgument, "boundary demo needs 0 < s < 1");
  BoundaryDemo demo;
  demo.s = s;
  demo.sigma = 1.0 - s;

  std::vector<FunctionSpec> candidates;
  for (double a : {0.5, 1.0, 2.0}) candidates.push_back(FunctionSpec::gaussian(a));
  for (int k = 0; k <= 3; ++k) candidates.push_back(FunctionSpec::hermite(k));

  const GSIndex decay = GSIndex::decay(demo.s, Regularity::Beurling);
  const GSIndex fourier = GSIndex::fourier(demo.sigma, Regularity::Beurling);
  for (const auto& spec : candidates) {
    const SampledFunction f = catalog_eval(spec, grid);
    DemoCandidate c;
    c.name = pretty_print(spec);
    const EnvelopeReport sides[2] = {classify_function(f, decay), classify_function(f, fourier)};
    const char* names[2] = {"decay", "fourier"};
    c.passed = true;
    for (int i = 0; i < 2 && c.passed; ++i) {
      if (sides[i].verdict == Verdict::Member) continue;
      c.passed = false;
      c.failing_side = names[i];
      c.first_failing_r = std::numeric_limits<double>::quiet_NaN();
      for (const auto& t : sides[i].beurling_table) {
        if (!t.interior_attained) {
          c.first_failing_r = t.r;
          c.attained_at = t.attained_at;
          break;
        }
      }
      c.diagnostic = sides[i].notes.empty() ? std::string(to_string(sides[i].verdict)) : sides[i].notes.front();
    }
    if (c.passed) ++demo.passing;
    demo.candidates.push_back(std::move(c));
  }
  return demo;
}

}  // namespace gstf
