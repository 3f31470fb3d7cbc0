import { PlotError } from "./types.js";

// Version string the producing CLI embeds in its JSON outputs. These
// scripts read exactly this schema; anything else is rejected rather
// than guessed at.
export const SUPPORTED_SCHEMA_VERSION = "1";

export function checkSchemaVersion(payload: unknown, source: string): void {
    if (typeof payload !== "object" || payload === null || Array.isArray(payload)) {
        throw new PlotError(`${source}: expected a JSON object`);
    }
    const version = (payload as Record<string, unknown>)["schema_version"];
    if (version === undefined) {
        throw new PlotError(`${source}: missing schema_version field`);
    }
    if (version !== SUPPORTED_SCHEMA_VERSION) {
        throw new PlotError(
            `${source}: unsupported schema_version ${JSON.stringify(version)}; ` +
                `this tool reads version "${SUPPORTED_SCHEMA_VERSION}"`,
        );
    }
}
