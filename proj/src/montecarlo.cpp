#include "akf/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "akf/errors.hpp"
#include "akf/rng.hpp"

namespace akf {

namespace {

// Per-label standard deviations in coefficient layout order.
std::vector<double> coefficient_sigmas(const ParameterFamily& family,
                                       std::uint64_t d, std::uint64_t K) {
  std::vector<double> sig;
  sig.reserve(1 + 2 * d * K);
  CompensatedSum alpha_sum;
  for (std::uint64_t j = 1; j <= d; ++j) alpha_sum.add(family.alpha_at(j));
  sig.push_back(std::sqrt(alpha_sum.value()));
  for (std::uint64_t j = 1; j <= d; ++j) {
    double beta = family.beta_at(j);
    double sigma = family.sigma_at(j);
    for (std::uint64_t k = 1; k <= K; ++k) {
      double sd = std::sqrt(beta / std::pow(static_cast<double>(k), sigma));
      sig.push_back(sd);  // cos
      sig.push_back(sd);  // sin
    }
  }
  return sig;
}

void fill_sample(std::vector<double>& out, const std::vector<double>& sigmas,
                 std::uint64_t seed) {
  GaussianSource gauss(seed);
  out.resize(sigmas.size());
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    out[i] = sigmas[i] == 0.0 ? 0.0 : sigmas[i] * gauss.next();
  }
}

struct Welford {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Welford& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    double delta = o.mean - mean;
    std::uint64_t total = count + o.count;
    mean += delta * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(count) *
                     static_cast<double>(o.count) / static_cast<double>(total);
    count = total;
  }
};

}  // namespace

std::uint64_t FieldSample::index_of(const EigenLabel& label) const {
  if (label.kind == EigenLabel::Kind::Constant) return 0;
  if (label.j < 1 || label.j > d || label.k < 1 || label.k > K) {
    throw validation_error("label outside the truncated coefficient layout");
  }
  std::uint64_t base = 1 + ((label.j - 1) * K + (label.k - 1)) * 2;
  return base + (label.parity == Parity::Sin ? 1 : 0);
}

FieldSample sample_field(const ParameterFamily& family, std::uint64_t d,
                         std::uint64_t K, std::uint64_t seed) {
  require_valid(family, d);
  if (K == 0) throw validation_error("sample_field: K must be >= 1");
  FieldSample s;
  s.d = d;
  s.K = K;
  fill_sample(s.coefficients, coefficient_sigmas(family, d, K), seed);
  return s;
}

ProjectionError empirical_projection_error(const ParameterFamily& family,
                                           std::uint64_t d, std::uint64_t K,
                                           std::uint64_t n,
                                           std::uint64_t num_samples,
                                           std::uint64_t seed,
                                           unsigned threads) {
  require_valid(family, d);
  if (K == 0) throw validation_error("projection error: K must be >= 1");
  if (num_samples == 0) {
    throw validation_error("projection error: need at least one sample");
  }
  std::uint64_t retained = 1 + 2 * d * K;
  if (n >= retained) {
    throw validation_error("projection error: n must be below 1 + 2dK");
  }

  std::vector<double> sigmas = coefficient_sigmas(family, d, K);

  // Top-n labels in spectrum tie order. Labels beyond the k <= K truncation
  // carry no retained coefficient and are skipped.
  std::vector<char> in_top(sigmas.size(), 0);
  {
    EigenStream stream(family, d);
    FieldSample layout;
    layout.d = d;
    layout.K = K;
    for (std::uint64_t i = 0; i < n; ++i) {
      Emission e = stream.next();
      if (e.label.kind == EigenLabel::Kind::Oscillatory && e.label.k > K) {
        continue;
      }
      in_top[layout.index_of(e.label)] = 1;
    }
  }

  // Fixed-size chunks combined in index order: the estimate is identical for
  // any worker count.
  constexpr std::uint64_t kChunk = 512;
  std::uint64_t num_chunks = (num_samples + kChunk - 1) / kChunk;
  std::vector<Welford> partial(num_chunks);

  auto run_chunk = [&](std::uint64_t chunk) {
    std::uint64_t begin = chunk * kChunk;
    std::uint64_t end = std::min(begin + kChunk, num_samples);
    Welford w;
    std::vector<double> coeffs;
    for (std::uint64_t i = begin; i < end; ++i) {
      fill_sample(coeffs, sigmas, derive_stream_seed(seed, i));
      double residual = 0.0;
      for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
        if (!in_top[idx]) residual += coeffs[idx] * coeffs[idx];
      }
      w.add(residual);
    }
    partial[chunk] = w;
  };

  unsigned workers = std::max(1u, threads);
  if (workers == 1 || num_chunks == 1) {
    for (std::uint64_t c = 0; c < num_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::uint64_t> next{0};
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t c; (c = next.fetch_add(1)) < num_chunks;) {
          run_chunk(c);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  Welford total;
  for (const Welford& w : partial) total.merge(w);

  ProjectionError out;
  out.samples = total.count;
  out.mean_sq_error = total.mean;
  if (total.count > 1) {
    double variance = total.m2 / static_cast<double>(total.count - 1);
    out.std_error = std::sqrt(variance / static_cast<double>(total.count));
  }
  return out;
}

}  // namespace akf
