#include <stdio.h>
#include <string.h>

#include "toric_ci.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    const int64_t rows[] = {4, 6, 9};
    ToricCiInstance *inst = NULL;
    CHECK(toric_ci_instance_from_rows(rows, 3, 1, &inst) == TORIC_CI_STATUS_OK);
    CHECK(toric_ci_instance_generators(inst) == 3);

    bool ci = false;
    CHECK(toric_ci_is_ci(inst, 0, &ci) == TORIC_CI_STATUS_OK);
    CHECK(ci);

    char *json = NULL;
    CHECK(toric_ci_analyze_json(inst, true, &json) == TORIC_CI_STATUS_OK);
    CHECK(strstr(json, "\"pointed\": true") != NULL);
    toric_ci_string_free(json);
    toric_ci_instance_free(inst);

    ToricCiInstance *line = NULL;
    CHECK(toric_ci_instance_parse("1 0\n-1 0\n", &line) == TORIC_CI_STATUS_OK);
    CHECK(toric_ci_is_ci(line, 0, &ci) == TORIC_CI_STATUS_INPUT);
    CHECK(toric_ci_last_error() != NULL);
    toric_ci_instance_free(line);

    printf("ok %s\n", toric_ci_version());
    return 0;
}
