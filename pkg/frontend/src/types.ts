import { existsSync, writeFileSync } from "node:fs";

export type FigureKind = "sphere3d" | "series" | "loglog";

export const FIGURE_KINDS: readonly FigureKind[] = ["sphere3d", "series", "loglog"];

// Any user-facing failure: bad arguments, unreadable or malformed inputs.
// CLI entry points catch this and exit nonzero with the message on stderr.
export class PlotError extends Error {
    constructor(message: string) {
        super(message);
        this.name = "PlotError";
    }
}

export interface FigureSpec {
    kind: FigureKind;
    inputs: string[];
    labels: string[];
    out: string;
}

export function validateSpec(spec: FigureSpec): void {
    if (!FIGURE_KINDS.includes(spec.kind)) {
        throw new PlotError(`unknown figure kind "${spec.kind}"; expected one of ${FIGURE_KINDS.join(", ")}`);
    }
    if (spec.inputs.length === 0) {
        throw new PlotError("no input files given");
    }
    if (spec.labels.length !== spec.inputs.length) {
        throw new PlotError(`${spec.labels.length} labels for ${spec.inputs.length} inputs`);
    }
    if (spec.out === "") {
        throw new PlotError("no output path given");
    }
    for (const input of spec.inputs) {
        if (!existsSync(input)) {
            throw new PlotError(`input file not found: ${input}`);
        }
    }
}

export function writeOutput(path: string, data: string): void {
    try {
        writeFileSync(path, data);
    } catch (err) {
        throw new PlotError(`cannot write ${path}: ${(err as Error).message}`);
    }
}

// Basename without directory or extension; used as the default series label.
export function fileStem(path: string): string {
    const base = path.replace(/\\/g, "/").split("/").pop() ?? path;
    const dot = base.lastIndexOf(".");
    return dot > 0 ? base.slice(0, dot) : base;
}
