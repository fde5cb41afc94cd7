#!/usr/bin/env python3
"""Builds include/coint/johansen_tables.hpp from simulate_johansen_tables output.

Critical values: published MacKinnon-Haug-Michelis (1999) values where listed
below AND within TOLERANCE of the simulation; simulated quantiles otherwise.
Moments for the gamma p-value approximation always come from the simulation.

usage: gen_johansen_tables.py SIM.csv > include/coint/johansen_tables.hpp
"""
import csv
import sys

TOLERANCE = 0.015  # relative

# (case, stat, level) -> values for n-r = 1, 2, ...
PUBLISHED = {
    (1, "trace", 5): [4.129906, 12.32090, 24.27596, 40.17493, 60.06141],
    (1, "max", 5): [4.129906, 11.22480, 17.79730, 24.15921, 30.43961],
    (2, "trace", 5): [9.164546, 20.26184, 35.19275, 54.07904, 76.97277],
    (2, "max", 5): [9.164546, 15.89210, 22.29962, 28.58808, 34.80587],
    (3, "trace", 5): [3.841465, 15.49471, 29.79707, 47.85613, 69.81889, 95.75366,
                      125.6154, 159.5297, 197.3709, 239.2354, 285.1425, 334.9837],
    (3, "max", 5): [3.841465, 14.26460, 21.13162, 27.58434, 33.87687, 40.07757,
                    46.23142, 52.36261, 58.43354, 64.50472, 70.53513, 76.57843],
    (3, "trace", 10): [2.705545, 13.42878, 27.06695, 44.49359, 65.81970, 91.10970],
    (3, "trace", 1): [6.634897, 19.93711, 35.45817, 54.68150, 77.81884, 104.9615],
    (3, "max", 10): [2.705545, 12.29652, 18.89282, 25.12408, 31.23922, 37.27641],
    (3, "max", 1): [6.634897, 18.52001, 25.86121, 32.71527, 39.37173, 45.86900],
    (4, "trace", 5): [12.32090, 25.87211, 42.91525, 63.87610, 88.80380],
    (4, "max", 5): [12.32090, 19.38704, 25.82321, 32.11832, 38.33101],
    (5, "trace", 5): [3.841465, 18.39771, 35.01090, 55.24578, 79.34145],
    (5, "max", 5): [3.841465, 17.14769, 24.25202, 30.81507, 37.16359],
}

LEVELS = [(10, "q90"), (5, "q95"), (1, "q99")]


def main():
    rows = {}
    reps = set()
    length = None
    with open(sys.argv[1]) as f:
        for r in csv.DictReader(f):
            rows[(int(r["case"]), int(r["n_minus_r"]), r["stat"])] = r
            reps.add(int(r["reps"]))
    cases = sorted({k[0] for k in rows})
    dims = sorted({k[1] for k in rows})
    assert cases == [1, 2, 3, 4, 5], cases
    assert dims == list(range(1, 13)), dims

    out = []
    rejected = []
    used = 0
    entries = []
    for c in cases:
        for m in dims:
            fields = {}
            marks = []
            for stat in ("trace", "max"):
                r = rows[(c, m, stat)]
                vals = []
                for level, col in LEVELS:
                    sim = float(r[col])
                    pub = PUBLISHED.get((c, stat, level))
                    if pub and m <= len(pub):
                        if abs(pub[m - 1] - sim) <= TOLERANCE * pub[m - 1]:
                            vals.append(pub[m - 1])
                            marks.append(f"{stat}{level}")
                            used += 1
                            continue
                        rejected.append((c, m, stat, level, pub[m - 1], sim))
                    vals.append(round(sim, 4))
                fields[stat] = vals
            t, mx = rows[(c, m, "trace")], rows[(c, m, "max")]
            entries.append((c, m, fields, [float(t["mean"]), float(t["var"]), float(mx["mean"]), float(mx["var"])], marks))

    for r in rejected:
        print("rejected published value", r, file=sys.stderr)
    print(f"published values used: {used}", file=sys.stderr)

    w = out.append
    w("#pragma once")
    w("")
    w("// Asymptotic null distributions of the Johansen trace and maximum-eigenvalue")
    w("// statistics, indexed by deterministic case (1..5) and n - r (1..12).")
    w("//")
    w("// Generated by tools/gen_johansen_tables.py from tools/simulate_johansen_tables")
    w(f"// ({'/'.join(str(x) for x in sorted(reps))} replications per cell, T = 1000, seed 19990101).")
    w("// Critical values are the published MacKinnon, Haug and Michelis (1999,")
    w("// J. Applied Econometrics 14) values where marked `pub:` and agreeing with")
    w(f"// the simulation within {TOLERANCE:.1%}; the rest are simulated quantiles. Means and")
    w("// variances (simulated) feed the gamma approximation for p-values.")
    w("")
    w("#include <array>")
    w("#include <string>")
    w("")
    w('#include "coint/error.hpp"')
    w("")
    w("namespace coint::johansen_tables {")
    w("")
    w("struct Entry {")
    w("  std::array<double, 3> trace_cv;  // 10%, 5%, 1%")
    w("  std::array<double, 3> max_cv;")
    w("  double trace_mean, trace_var, max_mean, max_var;")
    w("};")
    w("")
    w("inline constexpr int kMaxDimension = 12;")
    w("")
    w("// clang-format off")
    w("inline constexpr Entry kTable[5][kMaxDimension] = {")
    for c in cases:
        w(f"  {{  // case {c}")
        for (cc, m, fields, mom, marks) in entries:
            if cc != c:
                continue
            tr = ", ".join(f"{v:.7g}" for v in fields["trace"])
            mxv = ", ".join(f"{v:.7g}" for v in fields["max"])
            momtxt = ", ".join(f"{v:.6g}" for v in mom)
            note = f"  // n-r={m}" + (f" pub: {' '.join(marks)}" if marks else "")
            w(f"    {{{{{tr}}}, {{{mxv}}}, {momtxt}}},{note}")
        w("  },")
    w("};")
    w("// clang-format on")
    w("")
    w("inline const Entry& entry(int det_case, int n_minus_r) {")
    w("  if (det_case < 1 || det_case > 5) {")
    w('    throw detail::make_error(ErrorKind::UnsupportedCase, "deterministic case must be 1..5, got " + std::to_string(det_case));')
    w("  }")
    w("  if (n_minus_r < 1 || n_minus_r > kMaxDimension) {")
    w("    throw detail::make_error(ErrorKind::UnsupportedDimension,")
    w('                             "critical values cover n - r = 1..12, got " + std::to_string(n_minus_r));')
    w("  }")
    w("  return kTable[det_case - 1][n_minus_r - 1];")
    w("}")
    w("")
    w("}  // namespace coint::johansen_tables")
    print("\n".join(out))


if __name__ == "__main__":
    main()
