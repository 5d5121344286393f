#include <math.h>
#include <stdio.h>
#include <string.h>

#include "qchihara.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    double d = 0.0;
    CHECK(qch_density_qhermite(0.0, 0.0, &d) == QCH_STATUS_OK);
    CHECK(fabs(d - 1.0 / M_PI) < 1e-12);

    CHECK(qch_density_mu(0.0, 1.5, 0.0, 0.5, &d) == QCH_STATUS_DOMAIN);
    CHECK(qch_last_error_message() != NULL);

    QchPoly *h = NULL;
    char *text = NULL;
    CHECK(qch_poly_family(QCH_FAMILY_HERMITE, 2, &h) == QCH_STATUS_OK);
    CHECK(qch_poly_render(h, &text) == QCH_STATUS_OK);
    CHECK(strcmp(text, "x^2 - 1") == 0);
    qch_string_free(text);
    qch_poly_free(h);

    QchDiscreteMeasure *mu = NULL;
    double x[3], w[3];
    CHECK(qch_discrete_measure_new(2.0, 2, 0.3, 0, &mu) == QCH_STATUS_OK);
    CHECK(qch_discrete_measure_len(mu) == 3);
    CHECK(qch_discrete_measure_copy(mu, x, w, 3) == QCH_STATUS_OK);
    CHECK(fabs(w[0] + w[1] + w[2] - 1.0) < 1e-12);
    qch_discrete_measure_free(mu);

    printf("qchihara %s ok\n", qch_version());
    return 0;
}
