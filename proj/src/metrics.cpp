#include "rpe/metrics.hpp"

#include <array>
#include <cmath>

#include "rpe/errors.hpp"

namespace rpe {
namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Cyclic Jacobi on a symmetric 4x4; returns eigenvalues in vals and
// eigenvectors as columns of vecs.  Fixed sweep cap keeps it deterministic.
void jacobi4(Mat4 a, Mat4& vecs, std::array<double, 4>& vals) {
    vecs = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                off += a[p][q] * a[p][q];
            }
        }
        if (off < 1e-28) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double vkp = vecs[k][p], vkq = vecs[k][q];
                    vecs[k][p] = c * vkp - s * vkq;
                    vecs[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        vals[i] = a[i][i];
    }
}

void check_pair(const Pose& pred, const Pose& gt) {
    if (pred.joint_count() == 0 || pred.joint_count() != gt.joint_count()) {
        throw DimensionError("pose metric: joint counts differ or are zero");
    }
}

}  // namespace

double frame_majpe(const Pose& pred, const Pose& gt) {
    check_pair(pred, gt);
    const int j = pred.joint_count();
    double sum = 0.0;
    for (int i = 0; i < j; ++i) {
        const double dx = static_cast<double>(pred.joints[i][0]) - gt.joints[i][0];
        const double dy = static_cast<double>(pred.joints[i][1]) - gt.joints[i][1];
        const double dz = static_cast<double>(pred.joints[i][2]) - gt.joints[i][2];
        sum += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    return sum / j;
}

double majpe(const std::vector<Pose>& pred, const std::vector<Pose>& gt) {
    if (pred.empty() || pred.size() != gt.size()) {
        throw DimensionError("majpe: sequences empty or length mismatch");
    }
    double sum = 0.0;
    for (std::size_t f = 0; f < pred.size(); ++f) {
        sum += frame_majpe(pred[f], gt[f]);
    }
    return sum / static_cast<double>(pred.size());
}

Pose similarity_align(const Pose& pred, const Pose& gt) {
    check_pair(pred, gt);
    const int j = pred.joint_count();

    double cx = 0, cy = 0, cz = 0, gx = 0, gy = 0, gz = 0;
    for (int i = 0; i < j; ++i) {
        cx += pred.joints[i][0];
        cy += pred.joints[i][1];
        cz += pred.joints[i][2];
        gx += gt.joints[i][0];
        gy += gt.joints[i][1];
        gz += gt.joints[i][2];
    }
    cx /= j; cy /= j; cz /= j;
    gx /= j; gy /= j; gz /= j;

    // Cross-covariance S[a][b] = sum of xc_a * yc_b and pred spread.
    double S[3][3] = {};
    double norm_x = 0.0;
    for (int i = 0; i < j; ++i) {
        const double x[3] = {pred.joints[i][0] - cx, pred.joints[i][1] - cy,
                             pred.joints[i][2] - cz};
        const double y[3] = {gt.joints[i][0] - gx, gt.joints[i][1] - gy,
                             gt.joints[i][2] - gz};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                S[a][b] += x[a] * y[b];
            }
            norm_x += x[a] * x[a];
        }
    }

    Pose out(j);
    if (norm_x <= 1e-12) {
        // Collapsed prediction: translation only.
        for (int i = 0; i < j; ++i) {
            out.joints[i] = {
                static_cast<float>(pred.joints[i][0] - cx + gx),
                static_cast<float>(pred.joints[i][1] - cy + gy),
                static_cast<float>(pred.joints[i][2] - cz + gz)};
        }
        return out;
    }

    // Unit-quaternion parameterization of the best proper rotation: the
    // maximizing eigenvector of the 4x4 profile matrix.  This never returns
    // a reflection, which is the usual SVD pitfall.
    Mat4 n{};
    n[0][0] = S[0][0] + S[1][1] + S[2][2];
    n[0][1] = n[1][0] = S[1][2] - S[2][1];
    n[0][2] = n[2][0] = S[2][0] - S[0][2];
    n[0][3] = n[3][0] = S[0][1] - S[1][0];
    n[1][1] = S[0][0] - S[1][1] - S[2][2];
    n[1][2] = n[2][1] = S[0][1] + S[1][0];
    n[1][3] = n[3][1] = S[2][0] + S[0][2];
    n[2][2] = -S[0][0] + S[1][1] - S[2][2];
    n[2][3] = n[3][2] = S[1][2] + S[2][1];
    n[3][3] = -S[0][0] - S[1][1] + S[2][2];

    Mat4 vecs;
    std::array<double, 4> vals;
    jacobi4(n, vecs, vals);
    int best = 0;
    for (int i = 1; i < 4; ++i) {
        if (vals[i] > vals[best]) best = i;
    }
    const double qw = vecs[0][best], qx = vecs[1][best], qy = vecs[2][best],
                 qz = vecs[3][best];

    double r[3][3];
    r[0][0] = 1 - 2 * (qy * qy + qz * qz);
    r[0][1] = 2 * (qx * qy - qw * qz);
    r[0][2] = 2 * (qx * qz + qw * qy);
    r[1][0] = 2 * (qx * qy + qw * qz);
    r[1][1] = 1 - 2 * (qx * qx + qz * qz);
    r[1][2] = 2 * (qy * qz - qw * qx);
    r[2][0] = 2 * (qx * qz - qw * qy);
    r[2][1] = 2 * (qy * qz + qw * qx);
    r[2][2] = 1 - 2 * (qx * qx + qy * qy);

    // Optimal isotropic scale: <yc, R xc> / <xc, xc>.
    double trace = 0.0;
    for (int i = 0; i < j; ++i) {
        const double x[3] = {pred.joints[i][0] - cx, pred.joints[i][1] - cy,
                             pred.joints[i][2] - cz};
        const double y[3] = {gt.joints[i][0] - gx, gt.joints[i][1] - gy,
                             gt.joints[i][2] - gz};
        for (int a = 0; a < 3; ++a) {
            trace += y[a] * (r[a][0] * x[0] + r[a][1] * x[1] + r[a][2] * x[2]);
        }
    }
    const double scale = trace / norm_x;

    for (int i = 0; i < j; ++i) {
        const double x[3] = {pred.joints[i][0] - cx, pred.joints[i][1] - cy,
                             pred.joints[i][2] - cz};
        const double g[3] = {gx, gy, gz};
        float o[3];
        for (int a = 0; a < 3; ++a) {
            o[a] = static_cast<float>(
                scale * (r[a][0] * x[0] + r[a][1] * x[1] + r[a][2] * x[2]) +
                g[a]);
        }
        out.joints[i] = {o[0], o[1], o[2]};
    }
    return out;
}

double pa_majpe(const std::vector<Pose>& pred, const std::vector<Pose>& gt) {
    if (pred.empty() || pred.size() != gt.size()) {
        throw DimensionError("pa_majpe: sequences empty or length mismatch");
    }
    double sum = 0.0;
    for (std::size_t f = 0; f < pred.size(); ++f) {
        sum += frame_majpe(similarity_align(pred[f], gt[f]), gt[f]);
    }
    return sum / static_cast<double>(pred.size());
}

}  // namespace rpe
