/** Fixed categorical palette keyed by genre index; stable across sessions. */
const COLORS = [
  '#3466a5', // blue
  '#d2823a', // amber
  '#58975b', // green
  '#b65fa6', // plum
  '#c4554d', // brick
  '#5aa3b0', // teal
  '#8a77c9', // violet
  '#a69539', // olive
];

export function genreColor(index: number): string {
  return COLORS[index % COLORS.length];
}
