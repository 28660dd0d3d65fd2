#include <stdio.h>
#include <string.h>

#include "tatekit.h"

static const char *M2_ZERO =
    "{\"field\":{\"type\":\"Q\"},"
    "\"variables\":[{\"name\":\"x\",\"degree\":1},{\"name\":\"y\",\"degree\":1}],"
    "\"relators\":[\"x^2\",\"x*y\",\"y^2\"]}";

int main(void) {
    TkPresentation *p = NULL;
    if (tk_presentation_from_json(M2_ZERO, &p) != TK_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", tk_last_error_message());
        return 1;
    }
    uint64_t eps[5];
    if (tk_deviations(p, TK_ROUTE_ACYCLIC_CLOSURE, 5, 10, eps, 5) != TK_STATUS_OK) {
        return 2;
    }
    for (int i = 0; i < 5; i++) {
        printf("%s%llu", i ? " " : "", (unsigned long long)eps[i]);
    }
    printf("\n");

    TkCiStatus ci;
    if (tk_ci_check(p, 12, &ci) != TK_STATUS_OK || ci != TK_CI_STATUS_NO) {
        return 3;
    }
    if (tk_deviations(p, TK_ROUTE_ACYCLIC_CLOSURE, 5, 10, eps, 2) != TK_STATUS_BUFFER_TOO_SMALL) {
        return 4;
    }
    printf("%s\n", tk_last_error_message());

    char *json = NULL;
    if (tk_report_json(p, TK_COMMAND_BETTI, 3, 8, 0, &json) != TK_STATUS_OK) {
        return 5;
    }
    printf("%s", json);
    tk_string_free(json);
    tk_presentation_free(p);
    return 0;
}
