#include "hypflow/monitor.hpp"

#include <cmath>

#include "hypflow/errors.hpp"

namespace hypflow {

std::array<double, kCsvColumnCount> sample_values(const MonitorSample& s) {
    return {s.t,
            s.area,
            s.int_sigma[0],
            s.int_sigma[1],
            s.int_sigma[2],
            s.int_f_sigma[0],
            s.int_f_sigma[1],
            s.int_f_sigma[2],
            s.int_f_sigma[3],
            s.q,
            s.umbilic_dev,
            s.main_margin,
            s.aux_margin_weighted,
            s.aux_margin_area,
            s.r_min,
            s.r_max};
}

MonitorSample sample_from_values(const std::array<double, kCsvColumnCount>& v) {
    MonitorSample s;
    s.t = v[0];
    s.area = v[1];
    s.int_sigma = {v[2], v[3], v[4]};
    s.int_f_sigma = {v[5], v[6], v[7], v[8]};
    s.q = v[9];
    s.umbilic_dev = v[10];
    s.main_margin = v[11];
    s.aux_margin_weighted = v[12];
    s.aux_margin_area = v[13];
    s.r_min = v[14];
    s.r_max = v[15];
    return s;
}

void MonitorSeries::check_invariants() const {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
            throw Error(ErrorCode::Domain,
                        "monitor series: time not strictly increasing at sample " + std::to_string(i));
        }
        for (double x : sample_values(samples[i])) {
            if (!std::isfinite(x)) {
                throw Error(ErrorCode::Domain,
                            "monitor series: non-finite value at sample " + std::to_string(i));
            }
        }
    }
}

}  // namespace hypflow
