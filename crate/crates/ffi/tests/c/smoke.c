#include <stdio.h>
#include <string.h>
#include "realpi0.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                  \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    Rp0Group *g = NULL;
    Rp0Result *r = NULL;
    uint64_t order = 0;
    size_t rank = 0;
    int64_t gen[8];
    char *label = NULL;

    CHECK(rp0_group_gl(8, &g) == RP0_STATUS_OK);
    CHECK(rp0_compute(g, &r) == RP0_STATUS_OK);
    CHECK(rp0_pi0_order(r, &order) == RP0_STATUS_OK && order == 2);
    CHECK(rp0_pi0_rank(r, &rank) == RP0_STATUS_OK && rank == 1);
    CHECK(rp0_pi0_generator(r, 0, gen, 8) == RP0_STATUS_OK);
    CHECK(gen[0] == 1 && gen[1] == 0 && gen[7] == 0);
    CHECK(rp0_pi0_generator(r, 0, gen, 3) == RP0_STATUS_OUT_OF_RANGE);
    CHECK(rp0_pi0_generator_label(r, 0, &label) == RP0_STATUS_OK);
    CHECK(strcmp(label, "e\xe2\x88\xa8" "1") == 0);
    rp0_string_free(label);
    rp0_result_free(r);
    rp0_group_free(g);

    CHECK(rp0_group_pso(4, 4, &g) == RP0_STATUS_OK);
    CHECK(rp0_compute(g, &r) == RP0_STATUS_OK);
    CHECK(rp0_pi0_order(r, &order) == RP0_STATUS_OK && order == 4);
    rp0_result_free(r);
    rp0_group_free(g);

    g = NULL;
    CHECK(rp0_group_pso(1, 2, &g) == RP0_STATUS_INVALID_INPUT);
    CHECK(g == NULL);
    CHECK(rp0_last_error() != NULL);

    char *json = NULL;
    CHECK(rp0_report_json("{\"preset\":\"E7\",\"form\":\"EVII\"}", 0, &json) == RP0_STATUS_OK);
    CHECK(strstr(json, "\"order\": 2") != NULL);
    rp0_string_free(json);

    puts("ok");
    return 0;
}
