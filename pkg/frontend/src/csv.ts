import { readFileSync } from "node:fs";
import Papa from "papaparse";
import { PlotError, fileStem } from "./types.js";

// Column layout written by the integrator CLI's `run` subcommand.
export const TRAJECTORY_COLUMNS = ["t", "M1", "M2", "M3", "energy", "casimir"] as const;

// Column layout written by the `convergence` subcommand.
export const CONVERGENCE_COLUMNS = ["h", "error", "excluded"] as const;

export interface Trajectory {
    path: string;
    label: string;
    columns: Map<string, number[]>;
    rows: number;
}

export interface ConvergenceTable {
    h: number[];
    error: number[];
    excluded: boolean[];
}

function readText(path: string): string {
    try {
        return readFileSync(path, "utf8");
    } catch (err) {
        throw new PlotError(`cannot read ${path}: ${(err as Error).message}`);
    }
}

function parseRows(path: string, text: string): { header: string[]; rows: string[][] } {
    if (text.trim() === "") {
        throw new PlotError(`${path}: file is empty`);
    }
    const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
    if (parsed.errors.length > 0) {
        const first = parsed.errors[0];
        throw new PlotError(`${path}: malformed CSV (${first.message})`);
    }
    const [header, ...rows] = parsed.data;
    return { header, rows };
}

function checkHeader(path: string, header: string[], expected: readonly string[]): void {
    const got = new Set(header);
    const missing = expected.filter((c) => !got.has(c));
    const extra = header.filter((c) => !(expected as readonly string[]).includes(c));
    if (missing.length > 0 || extra.length > 0 || header.length !== expected.length) {
        throw new PlotError(
            `${path}: header [${header.join(", ")}] does not match the expected` +
                ` columns [${expected.join(", ")}]`,
        );
    }
}

function toNumber(path: string, row: number, name: string, cell: string): number {
    const value = Number(cell);
    if (cell.trim() === "" || Number.isNaN(value)) {
        throw new PlotError(`${path}: row ${row}: bad numeric value "${cell}" in column ${name}`);
    }
    return value;
}

// Strict reader for trajectory CSVs: exact documented column set, at
// least two data rows (a single point is not a trajectory).
export function parseTrajectoryCsv(path: string): Trajectory {
    const { header, rows } = parseRows(path, readText(path));
    checkHeader(path, header, TRAJECTORY_COLUMNS);
    if (rows.length < 2) {
        throw new PlotError(`${path}: too short (${rows.length} data rows; need at least 2)`);
    }
    const columns = new Map<string, number[]>();
    for (const name of header) {
        columns.set(name, []);
    }
    rows.forEach((cells, i) => {
        if (cells.length !== header.length) {
            throw new PlotError(`${path}: row ${i + 1} has ${cells.length} fields, expected ${header.length}`);
        }
        header.forEach((name, j) => {
            columns.get(name)!.push(toNumber(path, i + 1, name, cells[j]));
        });
    });
    return { path, label: fileStem(path), columns, rows: rows.length };
}

// Column accessor used by the series plot; the error lists what the
// file actually offers so a typo is a one-look fix.
export function column(traj: Trajectory, name: string): number[] {
    const values = traj.columns.get(name);
    if (values === undefined) {
        const available = [...traj.columns.keys()].join(", ");
        throw new PlotError(`${traj.path}: unknown column "${name}"; available columns: ${available}`);
    }
    return values;
}

export function parseConvergenceCsv(path: string): ConvergenceTable {
    const { header, rows } = parseRows(path, readText(path));
    checkHeader(path, header, CONVERGENCE_COLUMNS);
    if (rows.length === 0) {
        throw new PlotError(`${path}: no data rows`);
    }
    const h: number[] = [];
    const error: number[] = [];
    const excluded: boolean[] = [];
    rows.forEach((cells, i) => {
        if (cells.length !== header.length) {
            throw new PlotError(`${path}: row ${i + 1} has ${cells.length} fields, expected ${header.length}`);
        }
        h.push(toNumber(path, i + 1, "h", cells[0]));
        error.push(toNumber(path, i + 1, "error", cells[1]));
        const flag = cells[2].trim();
        if (flag !== "true" && flag !== "false") {
            throw new PlotError(`${path}: row ${i + 1}: excluded must be true or false, got "${flag}"`);
        }
        excluded.push(flag === "true");
    });
    return { h, error, excluded };
}
