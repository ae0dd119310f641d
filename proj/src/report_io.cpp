#include "railgauge/report_io.hpp"

#include <cstdio>

namespace railgauge {

namespace {

void put_prob(OrderedJson& obj, const std::string& key, const ProbValue& v,
              bool with_fraction) {
    obj[key] = v.value;
    if (with_fraction && v.exact) obj[key + "_frac"] = v.frac.to_fraction();
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string signs_to_string(const std::vector<int>& signs) {
    std::string out;
    out.reserve(signs.size());
    for (const int s : signs) out.push_back(s >= 0 ? '+' : '-');
    return out;
}

std::vector<int> signs_from_string(const std::string& text, int n_modes) {
    std::vector<int> out;
    if (text.find(',') != std::string::npos) {
        std::string cell;
        for (std::size_t pos = 0; pos <= text.size(); ++pos) {
            if (pos == text.size() || text[pos] == ',') {
                if (cell == "+1" || cell == "1" || cell == "+") out.push_back(+1);
                else if (cell == "-1" || cell == "-") out.push_back(-1);
                else fail(Errc::InvalidArgument, "bad sign entry '" + cell + "'");
                cell.clear();
            } else {
                cell.push_back(text[pos]);
            }
        }
    } else {
        for (const char c : text) {
            if (c == '+') out.push_back(+1);
            else if (c == '-') out.push_back(-1);
            else fail(Errc::InvalidArgument, std::string("bad sign character '") + c + "'");
        }
    }
    if (static_cast<int>(out.size()) != n_modes - 1)
        fail(Errc::DimensionMismatch, "expected " + std::to_string(n_modes - 1) +
                                          " ancilla signs, got " + std::to_string(out.size()));
    return out;
}

OrderedJson report_to_json(const MeasurementReport& rep) {
    const bool frac = rep.backend == Backend::ExactDyadic;
    OrderedJson j;
    j["n"] = rep.n;
    j["kind"] = kind_name(rep.kind);
    j["phi"] = rep.phi;
    j["signs"] = signs_to_string(rep.ancilla_signs);
    j["backend"] = backend_name(rep.backend);
    j["tol"] = rep.tol;
    j["prior_plus"] = rep.prior_plus;

    OrderedJson sectors = OrderedJson::array();
    for (const auto& row : rep.sectors) {
        OrderedJson s;
        s["I"] = row.photons;
        put_prob(s, "s_plus", row.s_plus, frac);
        put_prob(s, "s_minus", row.s_minus, frac);
        put_prob(s, "f_plus", row.f_plus, frac);
        put_prob(s, "f_minus", row.f_minus, frac);
        put_prob(s, "P_sector", row.p_sector, frac);
        sectors.push_back(std::move(s));
    }
    j["sectors"] = std::move(sectors);

    OrderedJson totals;
    put_prob(totals, "s_plus", rep.s_plus, frac);
    put_prob(totals, "s_minus", rep.s_minus, frac);
    put_prob(totals, "f_plus", rep.f_plus, frac);
    put_prob(totals, "f_minus", rep.f_minus, frac);
    put_prob(totals, "overall", rep.overall, frac);
    j["totals"] = std::move(totals);

    OrderedJson checks = OrderedJson::array();
    for (const auto& c : rep.checks) {
        OrderedJson cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["expected"] = c.expected;
        cj["got"] = c.got;
        cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);

    if (!rep.patterns.empty()) {
        OrderedJson patterns = OrderedJson::array();
        for (const auto& po : rep.patterns) {
            OrderedJson pj;
            pj["pattern"] = po.pattern;
            pj["total_photons"] = pattern_total(po.pattern);
            put_prob(pj, "P_plus", po.p_plus, frac);
            put_prob(pj, "P_minus", po.p_minus, frac);
            pj["verdict"] = verdict_name(po.verdict);
            patterns.push_back(std::move(pj));
        }
        j["patterns"] = std::move(patterns);
    }
    return j;
}

OrderedJson unitary_to_json(const Interferometer& itf) {
    OrderedJson j;
    j["n"] = itf.n;
    j["kind"] = kind_name(itf.kind);
    OrderedJson re = OrderedJson::array();
    OrderedJson im = OrderedJson::array();
    for (int r = 0; r < itf.n; ++r) {
        OrderedJson re_row = OrderedJson::array();
        OrderedJson im_row = OrderedJson::array();
        for (int c = 0; c < itf.n; ++c) {
            re_row.push_back(itf.entries(r, c).real());
            im_row.push_back(itf.entries(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    j["entries_re"] = std::move(re);
    j["entries_im"] = std::move(im);
    return j;
}

OrderedJson mesh_to_json(const std::vector<BeamSplitter>& mesh) {
    OrderedJson j = OrderedJson::array();
    for (const auto& bs : mesh) {
        OrderedJson b;
        b["layer"] = bs.layer;
        b["port_a"] = bs.port_a;
        b["port_b"] = bs.port_b;
        j.push_back(std::move(b));
    }
    return j;
}

OrderedJson sweep_to_json(const SweepResult& sweep) {
    OrderedJson j;
    j["warnings"] = sweep.warnings;
    OrderedJson reports = OrderedJson::array();
    for (const auto& rep : sweep.reports) reports.push_back(report_to_json(rep));
    j["reports"] = std::move(reports);
    return j;
}

OrderedJson coherent_to_json(const CoherentResult& result, const std::string& method) {
    OrderedJson j;
    j["n"] = result.n;
    j["alpha"] = result.alpha;
    j["cutoff"] = result.cutoff;
    j["p_plus"] = result.p_plus;
    j["p_minus"] = result.p_minus;
    j["average"] = result.average();
    j["method"] = method;
    if (!result.diagnostic.empty()) j["diagnostic"] = result.diagnostic;
    return j;
}

std::string sweep_to_csv(const SweepResult& sweep) {
    std::string out = "kind,n,s_plus,s_minus,overall\n";
    for (const auto& rep : sweep.reports) {
        out += kind_name(rep.kind);
        out += ',';
        out += std::to_string(rep.n);
        out += ',';
        out += format_double(rep.s_plus.value);
        out += ',';
        out += format_double(rep.s_minus.value);
        out += ',';
        out += format_double(rep.overall.value);
        out += '\n';
    }
    return out;
}

std::string patterns_to_csv(const MeasurementReport& rep) {
    if (rep.patterns.empty())
        fail(Errc::InvalidArgument, "report holds no patterns (run with keep_patterns)");
    std::string out = "pattern,total_photons,P_plus,P_minus\n";
    for (const auto& po : rep.patterns) {
        std::string cell;
        for (std::size_t k = 0; k < po.pattern.size(); ++k) {
            if (k) cell += ' ';
            cell += std::to_string(po.pattern[k]);
        }
        out += cell;
        out += ',';
        out += std::to_string(pattern_total(po.pattern));
        out += ',';
        out += format_double(po.p_plus.value);
        out += ',';
        out += format_double(po.p_minus.value);
        out += '\n';
    }
    return out;
}

} // namespace railgauge
