#include "tgv/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace tgv {

namespace {

void require_same_shape(const GridImage& u, const GridImage& ref,
                        const char* who) {
  if (!u.same_shape(ref)) {
    throw std::invalid_argument(std::string("shape-mismatch: ") + who +
                                " arguments");
  }
  if (u.kind != GridKind::Center) {
    throw std::invalid_argument(std::string("unsupported-kind: ") + who +
                                " expects Center images, got " +
                                grid_kind_name(u.kind));
  }
}

}  // namespace

double psnr(const GridImage& u, const GridImage& ref) {
  require_same_shape(u, ref, "psnr");
  double mse = 0.0;
  for (std::size_t k = 0; k < u.data.size(); ++k) {
    const double d = u.data[k] - ref.data[k];
    mse += d * d;
  }
  mse /= static_cast<double>(u.data.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const GridImage& u, const GridImage& ref) {
  require_same_shape(u, ref, "ssim");
  constexpr int kWindow = 8;
  constexpr double kC1 = 0.01 * 0.01;
  constexpr double kC2 = 0.03 * 0.03;
  const int rows = u.rows();
  const int cols = u.cols();
  if (rows < kWindow || cols < kWindow) {
    throw std::invalid_argument(
        "window-exceeds-image: ssim needs at least an 8x8 image, got " +
        std::to_string(rows) + "x" + std::to_string(cols));
  }

  double channel_sum = 0.0;
  for (int c = 0; c < u.channels; ++c) {
    double acc = 0.0;
    int windows = 0;
    for (int i0 = 0; i0 + kWindow <= rows; ++i0) {
      for (int j0 = 0; j0 + kWindow <= cols; ++j0) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
        for (int i = i0; i < i0 + kWindow; ++i) {
          for (int j = j0; j < j0 + kWindow; ++j) {
            const double x = u.at(i, j, c);
            const double y = ref.at(i, j, c);
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
          }
        }
        const double n = kWindow * kWindow;
        const double mx = sx / n;
        const double my = sy / n;
        const double vx = sxx / n - mx * mx;
        const double vy = syy / n - my * my;
        const double cxy = sxy / n - mx * my;
        acc += ((2.0 * mx * my + kC1) * (2.0 * cxy + kC2)) /
               ((mx * mx + my * my + kC1) * (vx + vy + kC2));
        ++windows;
      }
    }
    channel_sum += acc / windows;
  }
  return channel_sum / u.channels;
}

MetricPair metrics(const GridImage& u, const GridImage& ref) {
  return MetricPair{psnr(u, ref), ssim(u, ref)};
}

SweepResult sweep(const GridImage& f, const GridImage& ref,
                  const ModelSpec& tmpl, const std::vector<double>& grid,
                  int threads) {
  if (grid.empty()) {
    throw std::invalid_argument(
        "empty-grid: sweep needs at least one parameter value");
  }
  if (threads < 1) {
    throw std::invalid_argument("thread-count: sweep needs threads >= 1");
  }
  require_same_shape(f, ref, "sweep");

  SweepResult out;
  out.points.resize(grid.size());
  const auto eval_point = [&](std::size_t k) {
    SweepPoint& pt = out.points[k];
    pt.value = grid[k];
    ModelSpec spec = tmpl;
    if (is_first_order(spec.model)) {
      spec.lambda = grid[k];
    } else {
      // The ratio rule is unconditional here: a template alpha0 would
      // otherwise silently pin the pair while the grid moves alpha1.
      spec.alpha1 = grid[k];
      spec.alpha0.reset();
    }
    try {
      GridImage u = run_denoise(f, spec).first;
      pt.metric = metrics(u, ref);
      pt.valid = true;
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), grid.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < grid.size(); ++k) eval_point(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < grid.size();)
          eval_point(k);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  bool found = false;
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    const SweepPoint& pt = out.points[k];
    if (!pt.valid) continue;
    if (!found || pt.metric.psnr > out.best.psnr) {
      out.argmax = k;
      out.best = pt.metric;
      found = true;
    }
  }
  if (!found) {
    throw std::runtime_error("sweep-failed: every grid point failed; "
                             "first error: " + out.points.front().error);
  }
  out.argmax_on_boundary =
      out.argmax == 0 || out.argmax + 1 == out.points.size();
  return out;
}

GridImage make_phantom(PhantomKind kind, int n1, int n2, int square) {
  if (kind == PhantomKind::Checkerboard) {
    if (n1 < 4 || n2 < 4) {
      throw std::invalid_argument(
          "phantom-params: checkerboard needs n1, n2 >= 4, got " +
          std::to_string(n1) + "x" + std::to_string(n2));
    }
    if (square < 1) {
      throw std::invalid_argument(
          "phantom-params: checkerboard needs square >= 1, got " +
          std::to_string(square));
    }
    GridImage u = new_image(GridKind::Center, n1, n2);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j)
        u.at(i, j) = static_cast<double>((i / square + j / square) % 2);
    return u;
  }

  if (n1 < 16 || n2 < 16) {
    throw std::invalid_argument(
        "phantom-params: piecewise phantoms need n1, n2 >= 16, got " +
        std::to_string(n1) + "x" + std::to_string(n2));
  }
  GridImage u = new_image(GridKind::Center, n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const double x = (i + 0.5) / n1;
      const double y = (j + 0.5) / n2;
      if (kind == PhantomKind::PiecewiseSmooth) {
        const double r2 =
            (x - 0.38) * (x - 0.38) + (y - 0.38) * (y - 0.38);
        if (r2 < 0.32 * 0.32) {
          u.at(i, j) = 0.9 - 2.2 * r2;  // paraboloid cap with a rim jump
        } else if (x + y > 1.3) {
          u.at(i, j) = 0.1 + 0.2 * x + 0.4 * y;
        } else {
          u.at(i, j) = 0.5 - 0.35 * x * x - 0.1 * y;
        }
      } else {  // PiecewiseAffine
        if (x < 0.45) {
          u.at(i, j) = 0.15 + 0.5 * x + 0.2 * y;
        } else if (y < 0.55) {
          u.at(i, j) = 0.85 - 0.45 * x - 0.25 * y;
        } else {
          u.at(i, j) = 0.1 + 0.25 * x + 0.55 * y;
        }
      }
    }
  }
  return u;
}

InvarianceReport invariance_report(const GridImage& u, double alpha0,
                                   double alpha1, const PdConfig& cfg) {
  GridImage turned = rotate90(u);
  InvarianceReport rep;
  rep.classic_value = tgv_value_classic(u, alpha0, alpha1, cfg).first;
  rep.classic_rotated = tgv_value_classic(turned, alpha0, alpha1, cfg).first;
  rep.new_value = tgv_value_new(u, alpha0, alpha1, cfg).first;
  rep.new_rotated = tgv_value_new(turned, alpha0, alpha1, cfg).first;
  rep.classic_abs = std::abs(rep.classic_value - rep.classic_rotated);
  rep.new_abs = std::abs(rep.new_value - rep.new_rotated);
  rep.classic_rel =
      rep.classic_abs / std::max(std::abs(rep.classic_value), 1e-300);
  rep.new_rel = rep.new_abs / std::max(std::abs(rep.new_value), 1e-300);
  return rep;
}

}  // namespace tgv
