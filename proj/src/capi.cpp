#include "dilwalk.h"

#include <cstring>
#include <string>

#include "core/dilation.hpp"
#include "core/experiments.hpp"
#include "core/rng.hpp"
#include "core/space.hpp"

using namespace dilwalk;

extern "C" {

struct dw_space {
  Space rep;
};

struct dw_dilation {
  DilationStructure rep;
};

struct dw_rng {
  RngStream rep;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

template <typename F>
dw_status guarded(F&& fn) {
  try {
    fn();
    return DW_OK;
  } catch (const WrongSpaceKind& e) {
    g_last_error = e.what();
    return DW_ERR_WRONG_KIND;
  } catch (const SamplerFailure& e) {
    g_last_error = e.what();
    return DW_ERR_SAMPLER;
  } catch (const ConfigError& e) {
    g_last_error = e.what();
    return DW_ERR_CONFIG;
  } catch (const ExperimentFailure& e) {
    g_last_error = e.what();
    return DW_ERR_RUNTIME;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return DW_ERR_INVALID_ARG;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DW_ERR_RUNTIME;
  }
}

Point to_point(const dw_space* s, const double* p) {
  return Point(p, p + s->rep.dim());
}

void write_point(const Point& p, double* out) {
  std::memcpy(out, p.data(), p.size() * sizeof(double));
}

}  // namespace

extern "C" {

const char* dw_version(void) { return kVersion; }

const char* dw_strerror(dw_status status) {
  switch (status) {
    case DW_OK:
      return "ok";
    case DW_ERR_INVALID_ARG:
      return "invalid argument";
    case DW_ERR_WRONG_KIND:
      return "wrong space kind";
    case DW_ERR_SAMPLER:
      return "sampler failure";
    case DW_ERR_CONFIG:
      return "invalid config";
    case DW_ERR_RUNTIME:
      return "runtime failure";
  }
  return "unknown status";
}

const char* dw_last_error(void) { return g_last_error.c_str(); }

dw_status dw_space_create(const char* kind_spec, dw_space** out) {
  if (!kind_spec || !out) {
    g_last_error = "null argument";
    return DW_ERR_INVALID_ARG;
  }
  return guarded([&] { *out = new dw_space{Space::parse(kind_spec)}; });
}

void dw_space_destroy(dw_space* space) { delete space; }

int dw_space_dim(const dw_space* space) { return space->rep.dim(); }

dw_status dw_space_distance(const dw_space* space, const double* p,
                            const double* q, double* out) {
  return guarded([&] {
    *out = space->rep.distance(to_point(space, p), to_point(space, q));
  });
}

dw_status dw_space_ball_measure(const dw_space* space, const double* center,
                                double radius, double* out) {
  return guarded([&] {
    *out = space->rep.ball_measure(to_point(space, center), radius);
  });
}

dw_status dw_space_sample_ball(const dw_space* space, const double* center,
                               double radius, dw_rng* rng, double* out_point) {
  return guarded([&] {
    write_point(space->rep.sample_ball(to_point(space, center), radius, rng->rep),
                out_point);
  });
}

dw_status dw_heis_mul(const dw_space* space, const double* p, const double* q,
                      double* out) {
  return guarded([&] {
    write_point(space->rep.mul(to_point(space, p), to_point(space, q)), out);
  });
}

dw_status dw_heis_inv(const dw_space* space, const double* p, double* out) {
  return guarded([&] { write_point(space->rep.inv(to_point(space, p)), out); });
}

dw_status dw_heis_dil(const dw_space* space, double eps, const double* p,
                      double* out) {
  return guarded(
      [&] { write_point(space->rep.dil(eps, to_point(space, p)), out); });
}

dw_status dw_triangle_realization(double d_xy, double d_yz, double d_zx,
                                  double* out_coords) {
  return guarded([&] {
    PlanarTriangle t = triangle_realization(d_xy, d_yz, d_zx);
    out_coords[0] = t.ax;
    out_coords[1] = t.ay;
    out_coords[2] = t.bx;
    out_coords[3] = t.by;
    out_coords[4] = t.cx;
    out_coords[5] = t.cy;
  });
}

dw_status dw_dilation_create(const dw_space* space, dw_dilation** out) {
  if (!space || !out) {
    g_last_error = "null argument";
    return DW_ERR_INVALID_ARG;
  }
  return guarded([&] { *out = new dw_dilation{DilationStructure(space->rep)}; });
}

void dw_dilation_destroy(dw_dilation* ds) { delete ds; }

dw_status dw_dilate(const dw_dilation* ds, const double* x, double eps,
                    const double* u, double* out) {
  return guarded([&] {
    int n = ds->rep.space().dim();
    write_point(ds->rep.dilate(Point(x, x + n), eps, Point(u, u + n)), out);
  });
}

dw_status dw_rescaled_distance(const dw_dilation* ds, const double* x,
                               double eps, const double* u, const double* v,
                               double* out) {
  return guarded([&] {
    int n = ds->rep.space().dim();
    *out = ds->rep.rescaled_distance(Point(x, x + n), eps, Point(u, u + n),
                                     Point(v, v + n));
  });
}

dw_status dw_relative_dilation(const dw_dilation* ds, const double* x,
                               double eps, const double* u, double mu,
                               const double* v, double* out) {
  return guarded([&] {
    int n = ds->rep.space().dim();
    write_point(ds->rep.relative_dilation(Point(x, x + n), eps, Point(u, u + n),
                                          mu, Point(v, v + n)),
                out);
  });
}

dw_status dw_approx_translation(const dw_dilation* ds, const double* x,
                                double eps, const double* u, const double* v,
                                double* out) {
  return guarded([&] {
    int n = ds->rep.space().dim();
    write_point(ds->rep.approx_translation(Point(x, x + n), eps, Point(u, u + n),
                                           Point(v, v + n)),
                out);
  });
}

dw_rng* dw_rng_create(uint64_t seed, const char* label) {
  return new dw_rng{derive_substream(seed, label ? label : "")};
}

void dw_rng_destroy(dw_rng* rng) { delete rng; }

double dw_rng_uniform(dw_rng* rng) { return rng->rep.uniform(); }

dw_status dw_run_experiment(const char* config_json, char* err_buf,
                            size_t err_len) {
  dw_status st = guarded([&] {
    if (!config_json) throw std::invalid_argument("config_json is null");
    ExperimentConfig cfg = ExperimentConfig::from_json_text(config_json);
    run_experiment(cfg);
  });
  if (st != DW_OK && err_buf && err_len > 0) {
    std::strncpy(err_buf, g_last_error.c_str(), err_len - 1);
    err_buf[err_len - 1] = '\0';
  }
  return st;
}

}  // extern "C"
