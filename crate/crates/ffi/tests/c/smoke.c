#include <stdio.h>
#include <string.h>

#include "mactt.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    MacttSet *set = NULL;
    CHECK(mactt_set_parse("#3", &set) == MACTT_STATUS_OK);
    CHECK(mactt_set_cardinality(set) == 3);

    char *text = NULL;
    CHECK(mactt_set_to_string(set, &text) == MACTT_STATUS_OK);
    CHECK(strcmp(text, "#3") == 0);
    mactt_string_free(text);

    MacttSet *same = mactt_set_from_code(11);
    CHECK(mactt_set_compare(set, same) == 0);
    mactt_set_free(same);
    mactt_set_free(set);

    CHECK(mactt_set_parse("{", &set) == MACTT_STATUS_PARSE);
    CHECK(mactt_last_error() != NULL);

    const char *argv[] = {"hf-eval", "true", "--select", "x", "--from", "#2"};
    char *out = NULL;
    int code = -1;
    CHECK(mactt_cli_run(6, argv, &out, NULL, &code) == MACTT_STATUS_OK);
    CHECK(code == 0);
    CHECK(strstr(out, "#2") != NULL);
    mactt_string_free(out);

    puts("ok");
    return 0;
}
