export { parseCsv, SchemaError, orbitShape, gridShape, numbers } from "./csv";
export { render, renderTable, boundarySegments } from "./render";
export type { FigureJob, Kind, RenderResult } from "./render";
