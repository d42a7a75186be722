import type { GridPayload, PendingQuery, ResultPayload } from "../src/types.js";

export const F1_GRID: GridPayload = {
  criteria: [
    { name: "crit1", breakpoints: ["0", "2", "4"] },
    { name: "crit2", breakpoints: ["0", "2", "4"] },
  ],
};

/* First question of the worked two-criteria example: probe at (2, 0),
   the unknown sits on crit2. */
export const F1_FIRST: PendingQuery = {
  query: { i: 1, j: 2, criterion_i: "crit1", criterion_j: "crit2", q_i: "2", q_j: "0", p_i: "0" },
  phrasing:
    "Option one scores 2 on crit1 and 0 on crit2; option two scores 0 on crit1. " +
    "Which crit2 score makes you indifferent between the two options? Answer 'none' " +
    "if no value on the scale restores indifference.",
  answers_received: 0,
};

export const RESULT_TWO_MODELS: ResultPayload = {
  outcome: "two-models",
  grid: F1_GRID,
  tables: [
    { label: "dm-a", slopes: { crit1: ["1", "1"], crit2: ["2", "1"] } },
    { label: "dm-b", slopes: { crit1: ["1", "2"], crit2: ["1", "3"] } },
  ],
  query_count: 8,
  breakdown: { neighboring_rectangles: 4, scan: 1, single_rectangle: 3 },
  exploited: {
    first_pair: [1, 2],
    new_info_rectangles: [
      [1, 2, 1, 1],
      [1, 2, 1, 2],
      [1, 2, 2, 1],
    ],
    touched_rectangles: [
      [1, 2, 1, 1],
      [1, 2, 1, 2],
      [1, 2, 2, 1],
    ],
    scanned_rectangles: [[1, 2, 1, 1]],
    reference_deviations: 0,
    degenerate_retries: 0,
  },
  tables_unit: [
    {
      label: "dm-a",
      slopes: { crit1: ["0.1", "0.1"], crit2: ["0.15", "0.075"] },
      weights: { crit1: "0.4", crit2: "0.6" },
    },
    {
      label: "dm-b",
      slopes: { crit1: ["1/14", "1/7"], crit2: ["1/14", "3/14"] },
      weights: { crit1: "3/7", crit2: "4/7" },
    },
  ],
  curves: [
    {
      plane: [1, 2],
      axes: ["crit1", "crit2"],
      curves: [
        {
          model: "dm-a",
          level: "2",
          points: [
            ["0", "1"],
            ["2", "0"],
          ],
        },
        {
          model: "dm-a",
          level: "7",
          points: [
            ["0", "11/3"],
            ["2", "3"],
            ["7/2", "2"],
            ["4", "1"],
          ],
        },
        {
          model: "dm-b",
          level: "2",
          points: [
            ["0", "2"],
            ["2", "0"],
          ],
        },
      ],
    },
  ],
  marginals: [
    {
      criterion: "crit1",
      series: [
        {
          model: "dm-a",
          points: [
            ["0", "0"],
            ["2", "2"],
            ["4", "4"],
          ],
        },
        {
          model: "dm-b",
          points: [
            ["0", "0"],
            ["2", "2"],
            ["4", "6"],
          ],
        },
      ],
    },
    {
      criterion: "crit2",
      series: [
        {
          model: "dm-a",
          points: [
            ["0", "0"],
            ["2", "4"],
            ["4", "6"],
          ],
        },
        {
          model: "dm-b",
          points: [
            ["0", "0"],
            ["2", "2"],
            ["4", "8"],
          ],
        },
      ],
    },
  ],
};

export const RESULT_IDENTICAL: ResultPayload = {
  outcome: "identical-models",
  grid: F1_GRID,
  tables: [{ label: "shared", slopes: { crit1: ["1", "2"], crit2: ["1", "3"] } }],
  query_count: 1,
  breakdown: { scan: 1 },
  exploited: {
    first_pair: null,
    new_info_rectangles: [],
    touched_rectangles: [],
    scanned_rectangles: [[1, 2, 1, 1]],
    reference_deviations: 0,
    degenerate_retries: 0,
  },
  tables_unit: [
    {
      label: "shared",
      slopes: { crit1: ["1/14", "1/7"], crit2: ["1/14", "3/14"] },
      weights: { crit1: "3/7", crit2: "4/7" },
    },
  ],
  curves: [
    {
      plane: [1, 2],
      axes: ["crit1", "crit2"],
      curves: [
        {
          model: "shared",
          level: "2",
          points: [
            ["0", "2"],
            ["2", "0"],
          ],
        },
      ],
    },
  ],
  marginals: [
    {
      criterion: "crit1",
      series: [
        {
          model: "shared",
          points: [
            ["0", "0"],
            ["2", "2"],
            ["4", "6"],
          ],
        },
      ],
    },
    {
      criterion: "crit2",
      series: [
        {
          model: "shared",
          points: [
            ["0", "0"],
            ["2", "2"],
            ["4", "8"],
          ],
        },
      ],
    },
  ],
};

export const RESULT_DEGENERATE: ResultPayload = {
  outcome: "degenerate",
  grid: { criteria: [{ name: "crit1", breakpoints: ["0", "1", "2", "3", "4", "5"] }, { name: "crit2", breakpoints: ["0", "1"] }] },
  tables: [],
  query_count: 17,
  breakdown: {},
  exploited: null,
  error: {
    message: "no valid reference disambiguates the remaining intervals",
    context: { blocked: [[1, 3]] },
  },
};
