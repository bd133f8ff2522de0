#include <stdio.h>
#include <string.h>

#include "steinmann.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);     \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  StmContext *ctx = NULL;
  CHECK(stm_context_new(NULL, 5, &ctx) == STM_STATUS_OK);

  size_t count = 0;
  CHECK(stm_chamber_count(ctx, 5, &count) == STM_STATUS_OK);
  CHECK(count == 370);
  CHECK(stm_chamber_count(ctx, 9, &count) == STM_STATUS_RESOURCE_LIMIT);
  CHECK(stm_last_error() != NULL);

  StmArrangement *arr = NULL;
  CHECK(stm_arrangement_new(ctx, 2, &arr) == STM_STATUS_OK);
  StmElement *d = NULL;
  CHECK(stm_dynkin(arr, 0, &d) == STM_STATUS_OK);
  char *json = NULL;
  CHECK(stm_element_json(d, &json) == STM_STATUS_OK);
  CHECK(strcmp(json,
               "{\"ground\":[\"1\",\"2\"],\"basis\":\"H\",\"terms\":["
               "{\"key\":[[\"2\"],[\"1\"]],\"coeff\":\"-1\"},"
               "{\"key\":[[\"1\",\"2\"]],\"coeff\":\"1\"}]}") == 0);
  stm_string_free(json);

  StmElement *bad = NULL;
  CHECK(stm_element_from_json("[", &bad) == STM_STATUS_PARSE);
  CHECK(bad == NULL);

  const char *argv[] = {"verify", "hopf", "--n", "2"};
  char *out = NULL;
  CHECK(stm_run(4, argv, &out, NULL) == 0);
  CHECK(strstr(out, "\"ok\":true") != NULL);
  stm_string_free(out);

  stm_element_free(d);
  stm_arrangement_free(arr);
  stm_context_free(ctx);
  printf("ok %s\n", stm_version());
  return 0;
}
