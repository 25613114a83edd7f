#include <cstdio>
#include <map>
#include <ostream>
#include <string>

#include "seqclust/harness.hpp"

namespace seqclust {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

void write_csv(std::ostream& out, const std::vector<FssRow>& rows, bool timing) {
    out << "example,algo,distance,n,trials,errors,p_e,ln_p_e,censored,wall_ms\n";
    for (const auto& r : rows) {
        out << r.example << ',' << to_string(r.algo) << ',' << to_string(r.distance) << ','
            << r.n << ',' << r.trials << ',' << r.errors << ',' << num(r.p_e) << ','
            << opt(r.ln_p_e) << ',' << (r.censored() ? 1 : 0) << ','
            << num(timing ? r.wall_ms : 0.0) << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<SeqRow>& rows, bool timing) {
    out << "example,distance,c,alpha,trials,errors,p_e,ln_p_e,censored,mean_n,std_n,truncated,"
           "wall_ms\n";
    for (const auto& r : rows) {
        out << r.example << ',' << to_string(r.distance) << ',' << num(r.c) << ','
            << num(r.alpha) << ',' << r.trials << ',' << r.errors << ',' << num(r.p_e) << ','
            << opt(r.ln_p_e) << ',' << (r.censored() ? 1 : 0) << ',' << num(r.mean_n) << ','
            << num(r.std_n) << ',' << r.truncated << ',' << num(timing ? r.wall_ms : 0.0)
            << '\n';
    }
}

void write_bound_table(std::ostream& out, const std::vector<BoundRow>& rows) {
    out << "label,d_i,d_h,d_th,g,m,k,delta,a_f,b_f,b_f_midpoint,n_fss,n_tilde,c_m,alpha1,alpha,"
           "simulated_slope\n";
    for (const auto& r : rows) {
        const auto& p = r.params;
        const auto& c = r.constants;
        out << r.label << ',' << num(p.d_i) << ',' << num(p.d_h) << ',' << num(p.d_th) << ','
            << num(p.kernel_bound) << ',' << p.m << ',' << p.k << ',' << num(p.delta) << ','
            << num(c.a_f) << ',' << num(c.b_f) << ',' << num(c.b_f_midpoint) << ','
            << num(c.n_fss) << ',' << num(c.n_tilde) << ',' << num(c.c_m) << ','
            << num(c.alpha1) << ',' << num(c.alpha) << ',' << opt(r.simulated_slope) << '\n';
    }
}

void write_plotdata(std::ostream& out, const std::vector<FssRow>& rows) {
    std::map<std::string, std::vector<const FssRow*>> series;
    for (const auto& r : rows) {
        series["example" + r.example + "_" + std::string(to_string(r.algo)) + "_" +
               std::string(to_string(r.distance))]
            .push_back(&r);
    }
    for (const auto& [name, points] : series) {
        out << "# " << name << "\n# n ln_p_e\n";
        for (const auto* r : points) {
            if (r->ln_p_e) out << r->n << ' ' << num(*r->ln_p_e) << '\n';
        }
        out << "\n\n";
    }
}

void write_plotdata(std::ostream& out, const std::vector<SeqRow>& rows) {
    std::map<std::string, std::vector<const SeqRow*>> series;
    for (const auto& r : rows) {
        series["example" + r.example + "_seq_" + std::string(to_string(r.distance)) + "_alpha" +
               num(r.alpha)]
            .push_back(&r);
    }
    for (const auto& [name, points] : series) {
        out << "# " << name << "\n# mean_n ln_p_e\n";
        for (const auto* r : points) {
            if (r->ln_p_e) out << num(r->mean_n) << ' ' << num(*r->ln_p_e) << '\n';
        }
        out << "\n\n";
    }
}

}  // namespace seqclust
