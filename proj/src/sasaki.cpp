#include "cartanflat/sasaki.hpp"

#include "cartanflat/errors.hpp"

namespace cartanflat {

using namespace sym;

const char* to_string(Presentation p) noexcept {
    switch (p) {
        case Presentation::sl2: return "sl2";
        case Presentation::so21: return "so21";
        case Presentation::so3: return "so3";
    }
    return "?";
}

LieBasis LieBasis::of(Presentation p) {
    LieBasis b;
    b.tag_ = p;
    switch (p) {
        case Presentation::sl2:
            // σ₁ = ½[[0,−1],[−1,0]], σ₂ = ½[[1,0],[0,−1]], σ₃ = ½[[0,1],[−1,0]]
            b.size_ = 2;
            b.denom_ = 2;
            b.num_ = {std::vector<long long>{0, -1, -1, 0}, {1, 0, 0, -1}, {0, 1, -1, 0}};
            break;
        case Presentation::so21:
            b.size_ = 3;
            b.denom_ = 1;
            b.num_ = {std::vector<long long>{0, 0, 1, 0, 0, 0, 1, 0, 0},
                      {0, 0, 0, 0, 0, 1, 0, 1, 0},
                      {0, 1, 0, -1, 0, 0, 0, 0, 0}};
            break;
        case Presentation::so3:
            b.size_ = 3;
            b.denom_ = 1;
            b.num_ = {std::vector<long long>{0, 0, 1, 0, 0, 0, -1, 0, 0},
                      {0, 0, 0, 0, 0, 1, 0, -1, 0},
                      {0, 1, 0, -1, 0, 0, 0, 0, 0}};
            break;
    }
    return b;
}

Mat LieBasis::matrix(std::size_t a) const {
    Mat out(size_, size_);
    const auto& n = num_.at(a);
    for (std::size_t r = 0; r < size_; ++r) {
        for (std::size_t c = 0; c < size_; ++c) {
            out(r, c) = static_cast<double>(n[r * size_ + c]) / denom_;
        }
    }
    return out;
}

LieBasis::Table LieBasis::expected_table() const {
    Table t{};
    // [σ₁,σ₂] = ±σ₃, [σ₂,σ₃] = −σ₁, [σ₃,σ₁] = −σ₂; the sign of the first is
    // + for sl2 and so(2,1), − for so(3).
    const int s12 = tag_ == Presentation::so3 ? -1 : 1;
    t[0][1][2] = s12;
    t[1][0][2] = -s12;
    t[1][2][0] = -1;
    t[2][1][0] = 1;
    t[2][0][1] = -1;
    t[0][2][1] = 1;
    return t;
}

bool LieBasis::commutators_exact() const {
    const std::size_t m = size_;
    auto product = [m](const std::vector<long long>& x, const std::vector<long long>& y) {
        std::vector<long long> out(m * m, 0);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) {
                for (std::size_t k = 0; k < m; ++k) out[r * m + c] += x[r * m + k] * y[k * m + c];
            }
        }
        return out;
    };
    const Table t = expected_table();
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            const auto ab = product(num_[a], num_[b]);
            const auto ba = product(num_[b], num_[a]);
            for (std::size_t e = 0; e < m * m; ++e) {
                long long want = 0;
                for (std::size_t c = 0; c < 3; ++c) want += denom_ * t[a][b][c] * num_[c][e];
                if (ab[e] - ba[e] != want) return false;
            }
        }
    }
    return true;
}

Vec LieBasis::coordinates(const Mat& x) const {
    const std::size_t m2 = size_ * size_;
    Mat design(m2, 3);
    for (std::size_t a = 0; a < 3; ++a) {
        const Mat s = matrix(a);
        for (std::size_t e = 0; e < m2; ++e) design(e, a) = s(e / size_, e % size_);
    }
    Vec rhs(m2);
    for (std::size_t e = 0; e < m2; ++e) rhs[e] = x(e / size_, e % size_);
    return design.colPivHouseholderQr().solve(rhs);
}

double LieBasis::membership_defect(const Mat& x) const {
    switch (tag_) {
        case Presentation::sl2: return std::abs(x.trace());
        case Presentation::so21: {
            Vec eta(3);
            eta << 1.0, 1.0, -1.0;
            return algebra_defect({x}, eta);
        }
        case Presentation::so3: return (x + x.transpose()).cwiseAbs().maxCoeff();
    }
    return 0.0;
}

MatrixOneForm sasaki_form(const ScalarOneForm& w1, const ScalarOneForm& w2,
                          const ScalarOneForm& phi, const LieBasis& basis) {
    const std::size_t n = w1.dim();
    if (n != 2 || w2.dim() != 2 || phi.dim() != 2) throw DimensionError("Sasaki form is two-dimensional");
    const std::array<const ScalarOneForm*, 3> forms{&w1, &w2, &phi};
    const std::size_t m = basis.size();
    std::vector<ExprMatrix> comps;
    for (std::size_t k = 0; k < n; ++k) {
        ExprMatrix a(m, m);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) {
                Expression entry = num(0.0);
                for (std::size_t s = 0; s < 3; ++s) {
                    const long long coef = basis.numerator(s)[r * m + c];
                    if (coef == 0) continue;
                    const double v = static_cast<double>(coef) / basis.denominator();
                    entry = add(entry, mul(num(v), forms[s]->components[k]));
                }
                a(r, c) = entry;
            }
        }
        comps.push_back(std::move(a));
    }
    return MatrixOneForm(std::move(comps));
}

MatrixOneForm sasaki_form(const FrameField& f, const LieBasis& basis) {
    if (f.dim() != 2) throw DimensionError("Sasaki form needs a 2D frame");
    const ConnectionFormMatrix w = connection_form(f);
    return sasaki_form(f.coframe_form(0), f.coframe_form(1), w(1, 0), basis);
}

CurvatureField curvature_form(const MatrixOneForm& a) { return CurvatureField(a); }

Presentation presentation_for(Variant v) noexcept {
    return v == Variant::h ? Presentation::so21 : Presentation::so3;
}

namespace {

MatrixOneForm probe_form(const FrameField& f, Variant v) {
    if (f.dim() == 2) return sasaki_form(f, LieBasis::of(presentation_for(v)));
    return bundle_connection_form(BundleConnection::of(v), f);
}

}  // namespace

FlatnessProbe::FlatnessProbe(const ChartMetric& m, Variant v)
    : FlatnessProbe(orthonormal_frame(m), v) {}

FlatnessProbe::FlatnessProbe(const FrameField& f, Variant v)
    : frame_(f), curvature_(probe_form(frame_, v)) {}

double FlatnessProbe::residual(std::span<const double> p) const {
    frame_.metric().check_positive_definite(p);
    return curvature_.wedge_route(p).in_frame(frame_.frame_at(p)).max_abs();
}

ScanResult flatness_scan(const ChartMetric& m, Variant v, std::size_t per_axis) {
    const FlatnessProbe probe(m, v);
    return grid_max(m.chart(), per_axis, [&](std::span<const double> p) { return probe.residual(p); });
}

}  // namespace cartanflat
