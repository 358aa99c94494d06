#include <math.h>
#include <stdio.h>
#include <string.h>

#include "mellin.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    MellinComplex z;
    MellinComplex five = {5.0, 0.0};
    CHECK(mellin_gamma(five, &z) == MELLIN_STATUS_OK);
    CHECK(z.re == 24.0 && z.im == 0.0);

    MellinComplex pole = {-1.0, 0.0};
    CHECK(mellin_gamma(pole, &z) == MELLIN_STATUS_POLE);
    CHECK(strstr(mellin_last_error_message(), "pole") != NULL);

    MellinExpr *g = NULL;
    CHECK(mellin_expr_parse("exp(-x)", &g) == MELLIN_STATUS_OK);
    MellinConfig *cfg = mellin_config_new();
    CHECK(mellin_config_set_quadrature(cfg, 1e-12, 0.0, 12) == MELLIN_STATUS_OK);
    MellinEstimate est;
    MellinComplex half = {0.5, 0.0};
    CHECK(mellin_forward(g, half, cfg, &est) == MELLIN_STATUS_OK);
    CHECK(fabs(est.value.re - sqrt(acos(-1.0))) < 1e-11);
    mellin_expr_free(g);
    mellin_config_free(cfg);

    MellinExpr *bad = NULL;
    CHECK(mellin_expr_parse("1/(1+x", &bad) == MELLIN_STATUS_PARSE);
    CHECK(bad == NULL && mellin_last_error_position() == 6);

    MellinReport *report = NULL;
    CHECK(mellin_verify("I0", 4, 42, &report) == MELLIN_STATUS_OK);
    uint64_t pass = 0, fail = 0;
    CHECK(mellin_report_counts(report, &pass, &fail) == MELLIN_STATUS_OK);
    CHECK(pass == 4 && fail == 0);
    CHECK(strstr(mellin_report_json(report), "\"seed\": 42") != NULL);
    mellin_report_free(report);

    printf("ok %s\n", mellin_version());
    return 0;
}
